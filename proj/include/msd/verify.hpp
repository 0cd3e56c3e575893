#pragma once

#include "msd/connection.hpp"
#include "msd/double_group.hpp"
#include "msd/grid.hpp"
#include "msd/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msd {

// Random generators shared by the verification suites and unit tests.
Gl1Element random_gl1(const ModuleDims& dims, Rng& rng, double scale = 0.5);
Gl0Element random_gl0(const ModuleDims& dims, Rng& rng, double scale = 0.5);
GL1Element random_GL1(const ModuleDims& dims, Rng& rng, double scale = 0.5);
GL0Element random_GL0(const ModuleDims& dims, Rng& rng, double scale = 0.5);
// Square with the given bottom and left edges, random right edge and interior.
Square random_square(const GL0Element& x, const GL0Element& w, Rng& rng, double scale = 0.5);
// Gaussian node values on a uniform grid.
GridSurface random_grid(int cells_s, int cells_t, int d, Rng& rng, double scale = 1.0);

struct Check {
    std::string name;
    double value = 0.0;  // worst observed defect
    double limit = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    std::string summary() const;
};

SuiteResult run_algebra_laws(std::uint64_t seed, int instances = 100);         // crossed module
SuiteResult run_double_group_laws(std::uint64_t seed, int instances = 100);    // squares
SuiteResult run_grid_stokes(std::uint64_t seed, int grids = 20);
SuiteResult run_fubini(std::uint64_t seed, int grids = 20, int refine = 256);
SuiteResult run_linear_oracle(std::uint64_t seed, int cases = 10, int cells = 256);
SuiteResult run_trivial_module(std::uint64_t seed, int cells = 20);
SuiteResult run_fold_reflection(std::uint64_t seed, int grids = 10);
SuiteResult run_young_functorial(std::uint64_t seed, int grids = 4, int refine = 128);
SuiteResult run_separation(std::uint64_t seed);
SuiteResult run_fbs_statistics(std::uint64_t seed, int samples = 2000, int N = 64);
SuiteResult run_metric_behaviour(std::uint64_t seed, int samples = 64, int N = 16,
                                 int permutations = 200);

// CLI suite names: algebra | stokes | fubini | functorial | all.
std::vector<SuiteResult> run_named_suite(const std::string& name, std::uint64_t seed);

}  // namespace msd
