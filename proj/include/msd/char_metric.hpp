#pragma once

#include "msd/connection.hpp"
#include "msd/random_surface.hpp"
#include "msd/young.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msd {

enum class MetricVariant {
    Inside,   // |E_A e^{i theta} - E_B e^{i theta}|
    Literal,  // E_{X~A} E_{Y~B} |e^{i theta(X)} - e^{i theta(Y)}|
};
enum class DevRoute { Young, Exact };

struct MetricConfig {
    int N_max = 4;
    int K_conn = 8;
    int K_ell = 8;
    std::uint64_t seed = 0;
    MetricVariant variant = MetricVariant::Inside;
    DevRoute route = DevRoute::Young;
    YoungRule rule = YoungRule::CornerAverage;
    double conn_scale = 1.0;

    void validate() const;
};

std::string to_string(MetricVariant v);
std::string to_string(DevRoute r);

// Development of parametrize(X).
GL1Element develop_surface(const Matrix2Connection& w, const GridSurface& x, DevRoute route,
                           YoungRule rule = YoungRule::CornerAverage);

struct Complex2 {
    double re = 0.0, im = 0.0;
    double abs() const;
};

// Mean of exp(i <ell, H(parametrize(X_k))>) over the ensemble.
Complex2 char_fn_estimate(const Ensemble& ens, const Matrix2Connection& w, const Mat& ell,
                          DevRoute route = DevRoute::Young, YoungRule rule = YoungRule::CornerAverage);

// Uniform on the Frobenius unit ball of 2n x 2n matrices.
Mat sample_ell(int n, std::uint64_t seed, std::uint64_t stream = 0);

// Restricted connection and functional number (c, l) at level n.
Matrix2Connection level_connection(int n, int d_ambient, const MetricConfig& cfg, int c);
Mat level_functional(int n, const MetricConfig& cfg, int c, int l);

// theta[(c * K_ell + l) * members + k] for the members of a pooled list.
struct ThetaTable {
    int K = 0;        // K_conn * K_ell
    int members = 0;
    std::vector<double> theta;

    double at(int q, int k) const { return theta[static_cast<std::size_t>(q) * members + k]; }
};

ThetaTable theta_table(const std::vector<const GridSurface*>& surfaces, int n, const MetricConfig& cfg);

struct LevelEstimate {
    int n = 0;
    double dn = 0.0;
    double se = 0.0;  // standard error across (connection, functional) draws
};

// dn from a pooled table where members [0, na) form A and the rest form B (index lists).
LevelEstimate dn_from_table(const ThetaTable& t, const std::vector<int>& a, const std::vector<int>& b,
                            int n, MetricVariant variant);

LevelEstimate dn_estimate(const Ensemble& a, const Ensemble& b, int n, const MetricConfig& cfg);

struct PermutationResult {
    double observed = 0.0;
    std::vector<double> null;
    double p_value = 1.0;  // (1 + #{null >= observed}) / (1 + permutations)
};

PermutationResult permutation_test(const Ensemble& a, const Ensemble& b, int n,
                                   const MetricConfig& cfg, int permutations);

double truncation_bound(int N_max);

struct MetricReport {
    MetricConfig cfg;
    std::vector<LevelEstimate> levels;
    double d = 0.0;
    double d_se = 0.0;
    double truncation = 0.0;
    std::string label_a, label_b;
    int count_a = 0, count_b = 0;
};

MetricReport metric_estimate(const Ensemble& a, const Ensemble& b, const MetricConfig& cfg);
nlohmann::ordered_json report_to_json(const MetricReport& r);

struct SeparationResult {
    bool found = false;
    int a = -1, b = -1, coord = -1;
    double entry_x = 0.0, entry_y = 0.0, gap = 0.0, tol = 0.0;
    int scanned = 0;
    double max_gap = 0.0;
};

// Scans polynomial connections by total degree a+b <= max_degree (a ascending), then coordinate.
// Compares entry (0, b) of the exact developments of parametrize(X) and parametrize(Y).
SeparationResult separation_demo(const GridSurface& x, const GridSurface& y, int max_degree);

// sum over cells of s^a t^b times the (s, x_coord) cell area of parametrize(X), corner-averaged.
double area_moment(const GridSurface& x, int a, int b, int coord);

}  // namespace msd
