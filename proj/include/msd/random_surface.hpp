#pragma once

#include "msd/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msd {

// r_h(u, v) = (u^{2h} + v^{2h} - |u - v|^{2h}) / 2
double fbm_cov(double h, double u, double v);

// Lower Cholesky factor of [r_h(k_a, k_b)] on the nonzero knots; cached per (h, knots).
Mat fbm_cholesky(double h, const std::vector<double>& knots);

// Fractional Brownian sheet on a uniform N x N cell grid, d independent components,
// covariance r_h(s1,s2) r_h(t1,t2). `index` selects an independent stream under one seed.
GridSurface sample_fbs(double h, int N, int d, std::uint64_t seed, std::uint64_t index = 0);

struct Ensemble {
    std::vector<GridSurface> surfaces;
    std::string label;

    void validate() const;
};

struct EnsembleManifest {
    double hurst = 0.0;
    int grid = 0;
    int dim = 0;
    int count = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> files;
};

Ensemble sample_fbs_ensemble(double h, int N, int d, int count, std::uint64_t seed);

// Writes sample_XXXX.csv files plus manifest.json into dir (created if missing).
void write_ensemble(const std::string& dir, const Ensemble& ens, const EnsembleManifest& meta);
// Reads the files listed in manifest.json, or every *.csv in name order when there is none.
Ensemble read_ensemble(const std::string& dir);

}  // namespace msd
