#include "msd/random_surface.hpp"

#include "msd/parallel.hpp"
#include "msd/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace msd {

namespace fs = std::filesystem;

double fbm_cov(double h, double u, double v) {
    const double e = 2.0 * h;
    return 0.5 * (std::pow(std::abs(u), e) + std::pow(std::abs(v), e) - std::pow(std::abs(u - v), e));
}

namespace {

std::mutex g_chol_mu;
std::map<std::pair<double, std::vector<double>>, Mat> g_chol_cache;

}  // namespace

Mat fbm_cholesky(double h, const std::vector<double>& knots) {
    if (!(h > 0.0 && h < 1.0)) throw DimensionError("fbm_cholesky: Hurst index must lie in (0,1)");
    auto key = std::make_pair(h, knots);
    {
        std::lock_guard<std::mutex> lock(g_chol_mu);
        auto it = g_chol_cache.find(key);
        if (it != g_chol_cache.end()) return it->second;
    }
    const int n = static_cast<int>(knots.size());
    Mat cov(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) cov(a, b) = fbm_cov(h, knots[a], knots[b]);
    Mat L;
    const double scale = n > 0 ? cov.trace() / n : 1.0;
    for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
        Eigen::LLT<Mat> llt(cov + jitter * scale * Mat::Identity(n, n));
        if (llt.info() == Eigen::Success) {
            L = llt.matrixL();
            break;
        }
    }
    if (L.size() == 0 && n > 0) {
        throw NumericError("fbm_cholesky: covariance not positive definite after jitter (h=" +
                           std::to_string(h) + ", " + std::to_string(n) + " knots)");
    }
    std::lock_guard<std::mutex> lock(g_chol_mu);
    return g_chol_cache.emplace(std::move(key), std::move(L)).first->second;
}

GridSurface sample_fbs(double h, int N, int d, std::uint64_t seed, std::uint64_t index) {
    if (!(h > 0.0 && h < 1.0)) throw DimensionError("sample_fbs: Hurst index must lie in (0,1)");
    if (N < 1 || d < 1) throw DimensionError("sample_fbs: need N >= 1 and d >= 1");
    GridSurface g(uniform_knots(N), uniform_knots(N), d);
    const std::vector<double> inner(g.s.begin() + 1, g.s.end());
    const Mat L = fbm_cholesky(h, inner);
    Rng rng(seed, {0xfb5fb5ULL, index});
    for (int k = 0; k < d; ++k) {
        const Mat z = rng.gauss_matrix(N, N);  // (s, t)
        const Mat x = L * z * L.transpose();
        for (int j = 1; j <= N; ++j)
            for (int i = 1; i <= N; ++i) g.at(i, j, k) = x(i - 1, j - 1);
    }
    return g;
}

void Ensemble::validate() const {
    if (surfaces.empty()) throw DimensionError("ensemble '" + label + "' is empty");
    const int d = surfaces.front().d;
    for (const auto& s : surfaces) {
        if (s.d != d) throw DimensionError("ensemble '" + label + "' mixes surface dimensions");
    }
}

Ensemble sample_fbs_ensemble(double h, int N, int d, int count, std::uint64_t seed) {
    if (count < 1) throw DimensionError("sample_fbs_ensemble: count must be >= 1");
    Ensemble ens;
    ens.surfaces.resize(count);
    const std::vector<double> knots = uniform_knots(N);
    fbm_cholesky(h, std::vector<double>(knots.begin() + 1, knots.end()));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t k) {
        ens.surfaces[k] = sample_fbs(h, N, d, seed, k);
    });
    char buf[64];
    std::snprintf(buf, sizeof(buf), "fbs_h%g", h);
    ens.label = buf;
    return ens;
}

void write_ensemble(const std::string& dir, const Ensemble& ens, const EnsembleManifest& meta) {
    fs::create_directories(dir);
    nlohmann::ordered_json man;
    man["hurst"] = meta.hurst;
    man["grid"] = meta.grid;
    man["dim"] = meta.dim;
    man["count"] = static_cast<int>(ens.surfaces.size());
    man["seed"] = meta.seed;
    man["label"] = ens.label;
    std::vector<std::string> files;
    for (std::size_t k = 0; k < ens.surfaces.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "sample_%04zu.csv", k);
        write_grid(ens.surfaces[k], (fs::path(dir) / name).string());
        files.emplace_back(name);
    }
    man["files"] = files;
    std::ofstream f(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write manifest in " + dir);
    f << man.dump(2) << "\n";
}

Ensemble read_ensemble(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("ensemble directory not found: " + dir);
    Ensemble ens;
    ens.label = fs::path(dir).filename().string();
    std::vector<std::string> files;
    const fs::path man_path = fs::path(dir) / "manifest.json";
    if (fs::exists(man_path)) {
        std::ifstream f(man_path);
        const auto man = nlohmann::json::parse(f);
        for (const auto& name : man.at("files")) files.push_back(name.get<std::string>());
        if (man.contains("label")) ens.label = man["label"].get<std::string>();
    } else {
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".csv") files.push_back(e.path().filename().string());
        std::sort(files.begin(), files.end());
    }
    for (const auto& name : files) ens.surfaces.push_back(read_grid((fs::path(dir) / name).string()));
    ens.validate();
    return ens;
}

}  // namespace msd
