#pragma once

#include "msd/matrix.hpp"

#include "doctest.h"

#include <string>

namespace msd::test {

inline double maxabs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

#define CHECK_MAT_NEAR(a, b, tol) CHECK(::msd::test::maxabs((a) - (b)) <= (tol))

inline Mat mat(std::initializer_list<std::initializer_list<double>> rows) {
    Mat out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) out(i, j++) = v;
        ++i;
    }
    return out;
}

inline Vec vec(std::initializer_list<double> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace msd::test
