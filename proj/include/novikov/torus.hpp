#ifndef NOVIKOV_TORUS_HPP
#define NOVIKOV_TORUS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <novikov/betti.hpp>
#include <novikov/numeric.hpp>

namespace novikov
{

// c * cos(2 pi (m . z + p t) + phase)
struct TrigTerm {
    double amp = 0;
    std::vector<int> freq_space;
    int freq_time = 0;
    double phase = 0;
};

// Locally Hamiltonian system on T^{2n} = R^{2n} / Z^{2n} with the standard
// form sum dx_i ^ dy_i, coordinates z = (x_1..x_n, y_1..y_n).
//
// Sign convention: <L_w V, W> = -w(V, W), so V = L_w^{-1}(alpha) = J0 alpha
// with alpha = theta + dH_t, i.e. x' = -alpha_y, y' = alpha_x.
struct TorusSystem {
    std::size_t n = 1;
    std::vector<double> theta;
    // Exact decimal text of theta when it came from input; used for the
    // Novikov side. Empty means "derive from the doubles".
    std::vector<std::string> theta_text;
    std::vector<TrigTerm> hamiltonian;
    std::size_t steps = 2048;

    std::size_t dim() const noexcept
    {
        return 2 * n;
    }
    // Throws PreconditionError on inconsistent sizes.
    void check() const;
    std::vector<Rational> theta_exact() const;

    double energy(double t, const Eigen::VectorXd& z) const;
    // alpha = theta + dH_t
    Eigen::VectorXd one_form(double t, const Eigen::VectorXd& z) const;
    Eigen::VectorXd vector_field(double t, const Eigen::VectorXd& z) const;
};

struct FlowResult {
    Eigen::VectorXd endpoint; // on the lift
    Eigen::MatrixXd monodromy;
    std::vector<Eigen::VectorXd> trajectory; // steps + 1 lifted samples, if requested
    std::vector<Eigen::MatrixXd> linearization; // D(t_i), if requested
};

struct FlowOptions {
    bool variational = true;
    bool record = false;
};

// Classical RK4 with S.steps * t_final steps (rounded, at least one) on the
// lift, together with the variational equation D' = J0 Hess(H_t) D.
FlowResult flow(const TorusSystem& s, const Eigen::VectorXd& z0, double t_final = 1.0, FlowOptions opt = {});

struct PeriodicOrbit {
    Eigen::VectorXd base; // in [0,1)^{2n}
    std::vector<Eigen::VectorXd> trajectory;
    std::vector<int> displacement;
    Eigen::MatrixXd monodromy;
    double margin = 0; // |det(I - D)|
    bool degenerate = false;
    std::optional<int> cz_index;
    std::optional<double> action;
    double residual = 0;

    bool contractible() const;
};

struct OrbitSearchOptions {
    std::size_t grid = 8;
    double newton_tol = 1e-10;
    double dedupe_radius = 1e-4;
    double degeneracy_threshold = 1e-8;
    std::size_t max_newton_iterations = 50;
};

struct OrbitSearchResult {
    std::vector<PeriodicOrbit> orbits; // sorted by displacement, then base point
    std::size_t seeds = 0;
    std::size_t newton_failures = 0;
    int displacement_bound = 0;
    std::vector<std::string> log;
};

OrbitSearchResult find_periodic_orbits(const TorusSystem& s, const OrbitSearchOptions& opt = {});

// -(area enclosed per symplectic plane) + int_0^1 (theta . z(t) + H(t, z(t))) dt
// on the lifted trajectory as given. Throws PreconditionError for a
// non-contractible orbit.
double orbit_action(const TorusSystem& s, const PeriodicOrbit& o);

// int_0^1 L_w(V_t) dt integrated over the basis loops s -> base + s e_j.
std::vector<double> calabi_class(const TorusSystem& s, std::size_t quadrature = 64);

// int_0^1 d(x(t), y(t)) dt between two sampled loops, with the flat torus
// distance; sample counts must agree.
double loop_distance(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b);

enum class Verdict { pass, fail, hypothesis_violated };
std::string to_string(Verdict v);

struct VerificationReport {
    std::size_t contractible_orbits = 0; // nondegenerate ones
    std::size_t noncontractible_orbits = 0;
    std::size_t degenerate_orbits = 0;
    std::map<std::string, std::size_t> index_counts; // CZ index or "unassigned"
    BettiReport betti;
    std::size_t betti_sum = 0;
    Verdict verdict = Verdict::fail;
    std::size_t grid = 0;
    std::optional<std::size_t> densified_grid;
    std::optional<std::size_t> densified_count;
    std::size_t newton_failures = 0;
    double min_margin = 0; // over contractible nondegenerate orbits
    OrbitSearchResult search;
};

struct VerifyOptions {
    OrbitSearchOptions search;
    // Repeat the search at twice the grid density and record the count.
    bool densify = false;
};

VerificationReport verify_main_theorem(const TorusSystem& s, const VerifyOptions& opt = {});

// Torus systems used by the acceptance harness and the CLI --preset flag.
std::vector<std::string> system_preset_names();
TorusSystem system_preset(const std::string& name);

} // namespace novikov

#endif
