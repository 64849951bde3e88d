#include <novikov/torus.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <novikov/chain_complex.hpp>
#include <novikov/cz_index.hpp>
#include <novikov/error.hpp>

namespace novikov
{

namespace
{

constexpr double two_pi = 2 * std::numbers::pi;

// RK4 on the lift, with fixed-size Eigen types for the common dimensions.
template <int D>
class Integrator
{
public:
    using Vec = Eigen::Matrix<double, D, 1>;
    using Mat = Eigen::Matrix<double, D, D>;

    explicit Integrator(const TorusSystem& s) : m_n(static_cast<Eigen::Index>(s.n)), m_dim(2 * m_n)
    {
        m_theta = Vec::Zero(m_dim);
        for (Eigen::Index i = 0; i < m_dim; ++i) {
            m_theta(i) = s.theta[static_cast<std::size_t>(i)];
        }
        for (const auto& term : s.hamiltonian) {
            Vec m(m_dim);
            for (Eigen::Index i = 0; i < m_dim; ++i) {
                m(i) = term.freq_space[static_cast<std::size_t>(i)];
            }
            m_terms.push_back({term.amp, m, static_cast<double>(term.freq_time), term.phase});
        }
    }

    // alpha = theta + dH and, if wanted, Hess H.
    void evaluate(double t, const Vec& z, Vec& alpha, Mat* hess) const
    {
        alpha = m_theta;
        if (hess) {
            hess->setZero(m_dim, m_dim);
        }
        for (const auto& term : m_terms) {
            const double arg = two_pi * (term.m.dot(z) + term.p * t) + term.phase;
            alpha.noalias() -= (two_pi * term.amp * std::sin(arg)) * term.m;
            if (hess) {
                hess->noalias() -= (two_pi * two_pi * term.amp * std::cos(arg)) * (term.m * term.m.transpose());
            }
        }
    }

    // J0 v
    Vec apply_j(const Vec& v) const
    {
        Vec out(m_dim);
        out.head(m_n) = -v.tail(m_n);
        out.tail(m_n) = v.head(m_n);
        return out;
    }
    Mat apply_j(const Mat& v) const
    {
        Mat out(m_dim, m_dim);
        out.topRows(m_n) = -v.bottomRows(m_n);
        out.bottomRows(m_n) = v.topRows(m_n);
        return out;
    }

    FlowResult run(const Eigen::VectorXd& z0, double t_final, std::size_t nominal_steps, FlowOptions opt) const
    {
        const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(nominal_steps * t_final)));
        const double h = t_final / static_cast<double>(steps);
        Vec z = z0;
        Mat dmat = Mat::Identity(m_dim, m_dim);
        FlowResult out;
        if (opt.record) {
            out.trajectory.reserve(steps + 1);
            out.trajectory.emplace_back(z);
            if (opt.variational) {
                out.linearization.reserve(steps + 1);
                out.linearization.emplace_back(dmat);
            }
        }
        Vec a1(m_dim), a2(m_dim), a3(m_dim), a4(m_dim);
        Mat s1(m_dim, m_dim), s2(m_dim, m_dim), s3(m_dim, m_dim), s4(m_dim, m_dim);
        Mat* h1 = opt.variational ? &s1 : nullptr;
        Mat* h2 = opt.variational ? &s2 : nullptr;
        Mat* h3 = opt.variational ? &s3 : nullptr;
        Mat* h4 = opt.variational ? &s4 : nullptr;
        for (std::size_t i = 0; i < steps; ++i) {
            const double t = h * static_cast<double>(i);
            evaluate(t, z, a1, h1);
            const Vec k1 = apply_j(a1);
            evaluate(t + h / 2, z + (h / 2) * k1, a2, h2);
            const Vec k2 = apply_j(a2);
            evaluate(t + h / 2, z + (h / 2) * k2, a3, h3);
            const Vec k3 = apply_j(a3);
            evaluate(t + h, z + h * k3, a4, h4);
            const Vec k4 = apply_j(a4);
            if (opt.variational) {
                const Mat d1 = apply_j(Mat(s1 * dmat));
                const Mat d2 = apply_j(Mat(s2 * (dmat + (h / 2) * d1)));
                const Mat d3 = apply_j(Mat(s3 * (dmat + (h / 2) * d2)));
                const Mat d4 = apply_j(Mat(s4 * (dmat + h * d3)));
                dmat += (h / 6) * (d1 + 2 * d2 + 2 * d3 + d4);
            }
            z += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
            if (opt.record) {
                out.trajectory.emplace_back(z);
                if (opt.variational) {
                    out.linearization.emplace_back(dmat);
                }
            }
        }
        if (!z.allFinite() || !dmat.allFinite()) {
            throw IntegrationError("flow produced non-finite values");
        }
        out.endpoint = z;
        out.monodromy = opt.variational ? Eigen::MatrixXd(dmat) : Eigen::MatrixXd();
        return out;
    }

private:
    struct Term {
        double amp;
        Vec m;
        double p;
        double phase;
    };
    Eigen::Index m_n;
    Eigen::Index m_dim;
    Vec m_theta;
    std::vector<Term> m_terms;
};

double torus_gap(double a, double b)
{
    const double d = std::abs(a - b);
    const double f = d - std::floor(d);
    return std::min(f, 1 - f);
}

double torus_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    double s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double g = torus_gap(a(i), b(i));
        s += g * g;
    }
    return std::sqrt(s);
}

Eigen::VectorXd wrap_unit(const Eigen::VectorXd& z)
{
    Eigen::VectorXd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        double f = z(i) - std::floor(z(i));
        if (f >= 1 - 1e-13) {
            f = 0;
        }
        out(i) = f;
    }
    return out;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

} // namespace

void TorusSystem::check() const
{
    if (n == 0) {
        throw PreconditionError("n must be positive");
    }
    if (theta.size() != dim()) {
        throw PreconditionError("theta has " + std::to_string(theta.size()) + " entries, expected " + std::to_string(dim()));
    }
    if (!theta_text.empty() && theta_text.size() != dim()) {
        throw PreconditionError("theta text does not match theta");
    }
    for (std::size_t k = 0; k < hamiltonian.size(); ++k) {
        if (hamiltonian[k].freq_space.size() != dim()) {
            throw PreconditionError("hamiltonian term " + std::to_string(k) + " has the wrong number of frequencies");
        }
        if (!std::isfinite(hamiltonian[k].amp) || !std::isfinite(hamiltonian[k].phase)) {
            throw PreconditionError("hamiltonian term " + std::to_string(k) + " is not finite");
        }
    }
    for (double v : theta) {
        if (!std::isfinite(v)) {
            throw PreconditionError("theta is not finite");
        }
    }
}

std::vector<Rational> TorusSystem::theta_exact() const
{
    std::vector<Rational> out;
    if (!theta_text.empty()) {
        for (const auto& t : theta_text) {
            out.push_back(parse_rational(t));
        }
        return out;
    }
    for (double v : theta) {
        out.emplace_back(v);
    }
    return out;
}

double TorusSystem::energy(double t, const Eigen::VectorXd& z) const
{
    double h = 0;
    for (const auto& term : hamiltonian) {
        double dot = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            dot += term.freq_space[i] * z(static_cast<Eigen::Index>(i));
        }
        h += term.amp * std::cos(two_pi * (dot + term.freq_time * t) + term.phase);
    }
    return h;
}

Eigen::VectorXd TorusSystem::one_form(double t, const Eigen::VectorXd& z) const
{
    check();
    Integrator<Eigen::Dynamic> integ(*this);
    Eigen::VectorXd alpha;
    integ.evaluate(t, z, alpha, nullptr);
    return alpha;
}

Eigen::VectorXd TorusSystem::vector_field(double t, const Eigen::VectorXd& z) const
{
    check();
    Integrator<Eigen::Dynamic> integ(*this);
    Eigen::VectorXd alpha;
    integ.evaluate(t, z, alpha, nullptr);
    return integ.apply_j(alpha);
}

FlowResult flow(const TorusSystem& s, const Eigen::VectorXd& z0, double t_final, FlowOptions opt)
{
    s.check();
    if (s.steps < 64) {
        throw IntegrationError("step count " + std::to_string(s.steps) + " is below the minimum of 64");
    }
    if (!(t_final > 0 && t_final <= 1)) {
        throw PreconditionError("t_final must lie in (0, 1]");
    }
    if (static_cast<std::size_t>(z0.size()) != s.dim()) {
        throw PreconditionError("initial point has the wrong dimension");
    }
    switch (s.dim()) {
    case 2:
        return Integrator<2>(s).run(z0, t_final, s.steps, opt);
    case 4:
        return Integrator<4>(s).run(z0, t_final, s.steps, opt);
    default:
        return Integrator<Eigen::Dynamic>(s).run(z0, t_final, s.steps, opt);
    }
}

bool PeriodicOrbit::contractible() const
{
    return std::all_of(displacement.begin(), displacement.end(), [](int k) { return k == 0; });
}

double loop_distance(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b)
{
    if (a.size() != b.size() || a.size() < 2) {
        throw PreconditionError("loops must have the same number (at least 2) of samples");
    }
    double s = 0;
    const std::size_t last = a.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        const double w = (i == 0 || i == last) ? 0.5 : 1.0;
        s += w * torus_distance(a[i], b[i]);
    }
    return s / static_cast<double>(last);
}

OrbitSearchResult find_periodic_orbits(const TorusSystem& s, const OrbitSearchOptions& opt)
{
    s.check();
    if (opt.grid < 4) {
        throw PreconditionError("grid density must be at least 4 per coordinate");
    }
    const std::size_t dim = s.dim();
    const auto d = static_cast<Eigen::Index>(dim);
    OrbitSearchResult result;

    std::vector<Eigen::VectorXd> seeds;
    {
        std::vector<std::size_t> idx(dim, 0);
        while (true) {
            Eigen::VectorXd z(d);
            for (std::size_t i = 0; i < dim; ++i) {
                z(static_cast<Eigen::Index>(i)) = static_cast<double>(idx[i]) / static_cast<double>(opt.grid);
            }
            seeds.push_back(z);
            std::size_t i = dim;
            while (i > 0 && ++idx[i - 1] == opt.grid) {
                idx[i - 1] = 0;
                --i;
            }
            if (i == 0) {
                break;
            }
        }
    }
    result.seeds = seeds.size();

    std::vector<Eigen::VectorXd> seed_disp;
    std::vector<Eigen::MatrixXd> seed_jac;
    double max_disp = 0;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    for (const auto& z : seeds) {
        const FlowResult f = flow(s, z, 1.0, {true, false});
        seed_disp.push_back(f.endpoint - z);
        seed_jac.push_back(f.monodromy - id);
        max_disp = std::max(max_disp, seed_disp.back().cwiseAbs().maxCoeff());
    }
    // A root whose nearest seed is half a cell away is predicted by the
    // linearization within this reach; farther predictions belong to other seeds.
    const double reach = 1.5 / static_cast<double>(opt.grid);
    result.displacement_bound = static_cast<int>(std::ceil(max_disp)) + 1;
    const int bound = result.displacement_bound;

    const auto residual_of = [&](const FlowResult& f, const Eigen::VectorXd& z, const Eigen::VectorXd& k) {
        return Eigen::VectorXd(f.endpoint - z - k);
    };

    struct Candidate {
        Eigen::VectorXd base;
        std::vector<int> k;
    };
    std::vector<Candidate> roots;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        // Candidate displacements near the observed one; a root this far from
        // its seed would have to move the lift by more than the field allows.
        std::vector<std::vector<int>> cands{{}};
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<std::vector<int>> next;
            const double v = seed_disp[si](static_cast<Eigen::Index>(i));
            for (int k = -bound; k <= bound; ++k) {
                if (std::abs(v - k) <= 0.75) {
                    for (auto c : cands) {
                        c.push_back(k);
                        next.push_back(std::move(c));
                    }
                }
            }
            cands = std::move(next);
        }
        // minimum-norm steps keep Newton meaningful on degenerate families
        const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> seed_lu(seed_jac[si]);
        for (const auto& kc : cands) {
            Eigen::VectorXd k(d);
            for (std::size_t i = 0; i < dim; ++i) {
                k(static_cast<Eigen::Index>(i)) = kc[i];
            }
            const Eigen::VectorXd g0 = seed_disp[si] - k;
            if (g0.cwiseAbs().maxCoeff() >= opt.newton_tol) {
                const Eigen::VectorXd predicted = seed_lu.solve(-g0);
                if (!predicted.allFinite() || predicted.cwiseAbs().maxCoeff() > reach) {
                    continue;
                }
                // the linear model cannot reduce the residual: no root here
                if ((seed_jac[si] * predicted + g0).norm() > 0.5 * g0.norm()) {
                    continue;
                }
            }
            Eigen::VectorXd z = seeds[si];
            FlowResult f = flow(s, z, 1.0, {true, false});
            Eigen::VectorXd g = residual_of(f, z, k);
            bool converged = false, known = false;
            for (std::size_t it = 0; it < opt.max_newton_iterations; ++it) {
                if (g.cwiseAbs().maxCoeff() < opt.newton_tol) {
                    converged = true;
                    // one more full step usually lands at rounding level
                    const Eigen::MatrixXd jac = f.monodromy - Eigen::MatrixXd::Identity(d, d);
                    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> lu(jac);
                    {
                        const Eigen::VectorXd trial = z + lu.solve(-g);
                        const FlowResult ft = flow(s, trial, 1.0, {false, false});
                        if (trial.allFinite() && residual_of(ft, trial, k).norm() < g.norm()) {
                            z = trial;
                        }
                    }
                    break;
                }
                // Once an iterate sits on a root that was already found, Newton
                // would only reproduce it.
                for (const auto& r : roots) {
                    if (r.k == kc && g.cwiseAbs().maxCoeff() < 1e-6 && torus_distance(r.base, z) < 1e-6) {
                        known = true;
                    }
                }
                if (known) {
                    break;
                }
                const Eigen::MatrixXd jac = f.monodromy - Eigen::MatrixXd::Identity(d, d);
                const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> lu(jac);
                const Eigen::VectorXd step = lu.solve(-g);
                if (!step.allFinite()) {
                    break;
                }
                double lambda = 1;
                bool accepted = false;
                const double gnorm = g.norm();
                while (lambda > 1.0 / 1024) {
                    const Eigen::VectorXd trial = z + lambda * step;
                    FlowResult ft = flow(s, trial, 1.0, {true, false});
                    Eigen::VectorXd gt = residual_of(ft, trial, k);
                    if (gt.norm() <= (1 - 1e-4 * lambda) * gnorm) {
                        // shifting by an integer vector leaves g unchanged
                        const Eigen::VectorXd shift = trial - wrap_unit(trial);
                        z = trial - shift;
                        ft.endpoint -= shift;
                        f = std::move(ft);
                        g = std::move(gt);
                        accepted = true;
                        break;
                    }
                    lambda /= 2;
                }
                if (!accepted) {
                    break;
                }
            }
            if (known) {
                continue;
            }
            if (!converged) {
                ++result.newton_failures;
                result.log.push_back("seed " + std::to_string(si) + ": Newton did not converge");
                continue;
            }
            roots.push_back({wrap_unit(z), kc});
        }
    }

    // Deterministic order first, then deduplicate by loop distance.
    std::sort(roots.begin(), roots.end(), [](const Candidate& a, const Candidate& b) {
        if (a.k != b.k) {
            return a.k < b.k;
        }
        return lex_less(a.base, b.base);
    });
    for (const auto& root : roots) {
        bool near_existing = false;
        for (const auto& o : result.orbits) {
            if (o.displacement == root.k && torus_distance(o.base, root.base) < opt.dedupe_radius) {
                near_existing = true;
                break;
            }
        }
        FlowResult full = flow(s, root.base, 1.0, {true, true});
        if (near_existing) {
            bool duplicate = false;
            for (const auto& o : result.orbits) {
                if (o.displacement == root.k && loop_distance(o.trajectory, full.trajectory) < opt.dedupe_radius) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) {
                continue;
            }
        }
        PeriodicOrbit o;
        o.base = root.base;
        o.displacement = root.k;
        Eigen::VectorXd k(d);
        for (std::size_t i = 0; i < dim; ++i) {
            k(static_cast<Eigen::Index>(i)) = root.k[i];
        }
        o.residual = (full.endpoint - root.base - k).cwiseAbs().maxCoeff();
        o.monodromy = full.monodromy;
        o.margin = std::abs((id - full.monodromy).determinant());
        o.degenerate = o.margin <= opt.degeneracy_threshold;
        if (!o.degenerate) {
            try {
                PathTolerances tol;
                tol.degeneracy_threshold = opt.degeneracy_threshold;
                o.cz_index = conley_zehnder(SymplecticPath(s.n, std::move(full.linearization)), tol);
            } catch (const PathError& e) {
                result.log.push_back(std::string("orbit index unassigned: ") + e.what());
            }
        }
        o.trajectory = std::move(full.trajectory);
        if (o.contractible()) {
            o.action = orbit_action(s, o);
        }
        result.orbits.push_back(std::move(o));
    }
    return result;
}

double orbit_action(const TorusSystem& s, const PeriodicOrbit& o)
{
    if (!o.contractible()) {
        throw PreconditionError("action is only defined for contractible orbits");
    }
    const auto& tr = o.trajectory;
    if (tr.size() < 2) {
        throw PreconditionError("orbit has no sampled trajectory");
    }
    const auto n = static_cast<Eigen::Index>(s.n);
    double area = 0;
    for (std::size_t j = 0; j < tr.size(); ++j) {
        const auto& a = tr[j];
        const auto& b = tr[(j + 1) % tr.size()];
        for (Eigen::Index i = 0; i < n; ++i) {
            area += 0.5 * (a(i) * b(n + i) - b(i) * a(n + i));
        }
    }
    Eigen::VectorXd theta(2 * n);
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        theta(i) = s.theta[static_cast<std::size_t>(i)];
    }
    const std::size_t last = tr.size() - 1;
    double integral = 0;
    for (std::size_t j = 0; j <= last; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(last);
        const double w = (j == 0 || j == last) ? 0.5 : 1.0;
        integral += w * (theta.dot(tr[j]) + s.energy(t, tr[j]));
    }
    integral /= static_cast<double>(last);
    return -area + integral;
}

std::vector<double> calabi_class(const TorusSystem& s, std::size_t quadrature)
{
    s.check();
    const auto n = static_cast<Eigen::Index>(s.n);
    const auto d = 2 * n;
    // an arbitrary base point for the basis loops
    Eigen::VectorXd base(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        base(i) = 0.137 + 0.071 * static_cast<double>(i);
    }
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    const auto q = static_cast<double>(quadrature);
    for (Eigen::Index j = 0; j < d; ++j) {
        double sum = 0;
        for (std::size_t a = 0; a < quadrature; ++a) {
            for (std::size_t b = 0; b < quadrature; ++b) {
                Eigen::VectorXd z = base;
                z(j) += static_cast<double>(b) / q;
                const Eigen::VectorXd v = s.vector_field(static_cast<double>(a) / q, z);
                // L_w(V)(e_j) = -w(V, e_j)
                sum += j < n ? v(n + j) : -v(j - n);
            }
        }
        out[static_cast<std::size_t>(j)] = sum / (q * q);
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::hypothesis_violated:
        return "hypothesis violated";
    }
    return "unknown";
}

namespace
{

std::size_t count_nondegenerate_contractible(const OrbitSearchResult& r)
{
    return static_cast<std::size_t>(std::count_if(r.orbits.begin(), r.orbits.end(),
                                                  [](const PeriodicOrbit& o) { return o.contractible() && !o.degenerate; }));
}

} // namespace

VerificationReport verify_main_theorem(const TorusSystem& s, const VerifyOptions& opt)
{
    VerificationReport rep;
    rep.grid = opt.search.grid;
    rep.search = find_periodic_orbits(s, opt.search);
    rep.newton_failures = rep.search.newton_failures;
    bool first = true;
    for (const auto& o : rep.search.orbits) {
        if (!o.contractible()) {
            ++rep.noncontractible_orbits;
            continue;
        }
        if (o.degenerate) {
            ++rep.degenerate_orbits;
            continue;
        }
        ++rep.contractible_orbits;
        ++rep.index_counts[o.cz_index ? std::to_string(*o.cz_index) : "unassigned"];
        rep.min_margin = first ? o.margin : std::min(rep.min_margin, o.margin);
        first = false;
    }

    const auto theta = s.theta_exact();
    const bool zero = std::all_of(theta.begin(), theta.end(), [](const Rational& q) { return q == 0; });
    const WeightedLattice lattice = zero ? WeightedLattice::zero_weight(s.dim()) : WeightedLattice::rational_class(theta);
    rep.betti = novikov_betti(torus_complex(s.dim()), lattice);
    rep.betti_sum = rep.betti.total();

    if (opt.densify) {
        OrbitSearchOptions dense = opt.search;
        dense.grid *= 2;
        rep.densified_grid = dense.grid;
        rep.densified_count = count_nondegenerate_contractible(find_periodic_orbits(s, dense));
    }

    if (rep.degenerate_orbits > 0) {
        rep.verdict = Verdict::hypothesis_violated;
    } else {
        rep.verdict = rep.contractible_orbits >= rep.betti_sum ? Verdict::pass : Verdict::fail;
    }
    return rep;
}

namespace
{

TrigTerm cosine(double amp, std::vector<int> m, int p = 0, double phase = 0)
{
    return TrigTerm{amp, std::move(m), p, phase};
}

} // namespace

std::vector<std::string> system_preset_names()
{
    return {"t2_two_cosine", "t4_product",    "t2_translation", "t2_integral_class", "t2_time_dependent",
            "t2_small_class", "t2_degenerate", "t2_identity"};
}

TorusSystem system_preset(const std::string& name)
{
    TorusSystem s;
    s.n = 1;
    s.theta = {0, 0};
    s.theta_text = {"0", "0"};
    if (name == "t2_two_cosine") {
        s.hamiltonian = {cosine(0.05, {1, 0}), cosine(0.05, {0, 1})};
    } else if (name == "t4_product") {
        s.n = 2;
        s.theta = {0, 0, 0, 0};
        s.theta_text = {"0", "0", "0", "0"};
        s.hamiltonian = {cosine(0.05, {1, 0, 0, 0}), cosine(0.05, {0, 1, 0, 0}), cosine(0.05, {0, 0, 1, 0}),
                         cosine(0.05, {0, 0, 0, 1})};
        // the variational flow in dimension 4 dominates the harness runtime;
        // 512 RK4 steps still resolve the endpoint far below the Newton tolerance
        s.steps = 512;
    } else if (name == "t2_translation") {
        s.theta = {0.5, 0};
        s.theta_text = {"0.5", "0"};
    } else if (name == "t2_integral_class") {
        s.theta = {1, 0};
        s.theta_text = {"1", "0"};
        s.hamiltonian = {cosine(0.05, {1, 0}), cosine(0.05, {0, 1})};
    } else if (name == "t2_time_dependent") {
        s.hamiltonian = {cosine(0.05, {1, 0}), cosine(0.05, {0, 1}), cosine(0.02, {1, 1}, 1, 0.3)};
    } else if (name == "t2_small_class") {
        s.theta = {0.02, 0};
        s.theta_text = {"0.02", "0"};
        s.hamiltonian = {cosine(0.05, {1, 0}), cosine(0.05, {0, 1}), cosine(0.02, {0, 1}, 1, 0)};
    } else if (name == "t2_degenerate") {
        // x' = 0 everywhere, so fixed points come in circles
        s.theta = {0.02, 0};
        s.theta_text = {"0.02", "0"};
        s.hamiltonian = {cosine(0.05, {1, 0})};
    } else if (name == "t2_identity") {
        // H = 0, theta = 0: every point is fixed
    } else {
        throw ParseError("unknown system preset '" + name + "'");
    }
    return s;
}

} // namespace novikov
