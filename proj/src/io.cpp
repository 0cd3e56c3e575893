#include "msd/io.hpp"

#include <fstream>
#include <sstream>

namespace msd {

nlohmann::ordered_json matrix_to_json(const Mat& m) {
    auto out = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Mat matrix_from_json(const nlohmann::json& j, int rows, int cols, const std::string& what) {
    Mat m = Mat::Zero(rows, cols);
    if (!j.is_array()) throw DimensionError(what + ": expected a nested array");
    if (rows == 0 || cols == 0) {
        // zero-width blocks: accept [] or rows of []
        if (static_cast<int>(j.size()) != 0 && static_cast<int>(j.size()) != rows) {
            throw DimensionError(what + ": expected " + std::to_string(rows) + "x" +
                                 std::to_string(cols));
        }
        return m;
    }
    if (static_cast<int>(j.size()) != rows) {
        throw DimensionError(what + ": expected " + std::to_string(rows) + " rows, got " +
                             std::to_string(j.size()));
    }
    for (int r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw DimensionError(what + ": row " + std::to_string(r) + " should have " +
                                 std::to_string(cols) + " entries");
        }
        for (int c = 0; c < cols; ++c) m(r, c) = row[c].get<double>();
    }
    return m;
}

nlohmann::ordered_json connection_to_json(const Matrix2Connection& w) {
    nlohmann::ordered_json out;
    out["dims"] = {{"n", w.dims.n}, {"m", w.dims.m}, {"p", w.dims.p}};
    out["d"] = w.d;
    nlohmann::ordered_json blocks;
    auto list = [](const std::vector<Mat>& ms) {
        auto arr = nlohmann::ordered_json::array();
        for (const Mat& m : ms) arr.push_back(matrix_to_json(m));
        return arr;
    };
    blocks["A"] = list(w.A);
    blocks["B"] = list(w.B);
    blocks["C"] = list(w.C);
    blocks["D"] = list(w.D);
    blocks["E"] = list(w.E);
    blocks["U"] = list(w.U);
    out["blocks"] = std::move(blocks);
    return out;
}

Matrix2Connection connection_from_json(const nlohmann::json& j) {
    ModuleDims dims{j.at("dims").at("n").get<int>(), j.at("dims").at("m").get<int>(),
                    j.at("dims").at("p").get<int>()};
    dims.validate();
    const int d = j.at("d").get<int>();
    if (d < 0) throw DimensionError("connection: negative d");
    const auto& b = j.at("blocks");
    auto list = [&](const char* name, int count, int rows, int cols) {
        const auto& arr = b.at(name);
        if (!arr.is_array() || static_cast<int>(arr.size()) != count) {
            throw DimensionError(std::string("connection block list ") + name + " should have " +
                                 std::to_string(count) + " entries");
        }
        std::vector<Mat> out;
        for (int k = 0; k < count; ++k)
            out.push_back(matrix_from_json(arr[k], rows, cols, std::string(name) + "[" +
                                                                   std::to_string(k) + "]"));
        return out;
    };
    const int n = dims.n, m = dims.m, p = dims.p;
    return build_semiflat(dims, d, list("A", d, n, n), list("B", d, m, n), list("C", d, m, m),
                          list("D", d, n, p), list("E", d, p, p),
                          list("U", Matrix2Connection::pair_count(d), m, p));
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

void write_connection(const Matrix2Connection& w, const std::string& path) {
    write_text(path, connection_to_json(w).dump(2));
}

Matrix2Connection read_connection(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw DimensionError("connection file " + path + ": " + e.what());
    }
    try {
        return connection_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw DimensionError("connection file " + path + ": " + e.what());
    }
}

nlohmann::ordered_json gl1_to_json(const GL1Element& h) {
    const Blocks b = split_blocks(h.dims, h.H);
    nlohmann::ordered_json out;
    out["H"] = matrix_to_json(h.H);
    out["R"] = matrix_to_json(b.R);
    out["S"] = matrix_to_json(b.S);
    out["T"] = matrix_to_json(b.T);
    out["U"] = matrix_to_json(b.U);
    return out;
}

nlohmann::ordered_json gl0_to_json(const GL0Element& g) {
    nlohmann::ordered_json out;
    out["F"] = matrix_to_json(g.F);
    out["G"] = matrix_to_json(g.G);
    return out;
}

}  // namespace msd
