#include <doctest.h>

#include <cmath>
#include <random>

#include <novikov/cz_index.hpp>
#include <novikov/error.hpp>
#include <novikov/torus.hpp>

using namespace novikov;

namespace
{

constexpr double pi = 3.14159265358979323846;

Eigen::VectorXd random_point(std::mt19937& rng, std::size_t d)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd z(static_cast<Eigen::Index>(d));
    for (auto& v : z) {
        v = u(rng);
    }
    return z;
}

double symplectic_defect(const Eigen::MatrixXd& d, std::size_t n)
{
    const Eigen::MatrixXd j = standard_symplectic(n);
    return (d.transpose() * j * d - j).cwiseAbs().maxCoeff();
}

// Suite systems where the flow is smooth and nondegenerate enough to test numerics.
std::vector<std::string> smooth_presets()
{
    std::vector<std::string> out;
    for (const auto& name : system_preset_names()) {
        out.push_back(name);
    }
    return out;
}

PeriodicOrbit sampled_loop(std::vector<Eigen::VectorXd> tr)
{
    PeriodicOrbit o;
    o.base = tr.front();
    o.displacement.assign(static_cast<std::size_t>(tr.front().size()), 0);
    o.trajectory = std::move(tr);
    return o;
}

} // namespace

TEST_CASE("zero and constant vector fields integrate exactly")
{
    const auto id = system_preset("t2_identity");
    Eigen::VectorXd z(2);
    z << 0.3, 0.8;
    const auto r = flow(id, z);
    CHECK((r.endpoint - z).norm() == 0.0);
    CHECK((r.monodromy - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

    TorusSystem tr;
    tr.n = 1;
    tr.theta = {0.37, -0.21};
    const auto q = flow(tr, z);
    // x' = -theta_y, y' = theta_x
    Eigen::VectorXd expected(2);
    expected << 0.3 + 0.21, 0.8 + 0.37;
    CHECK((q.endpoint - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((q.monodromy - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("energy is conserved for autonomous Hamiltonians")
{
    std::mt19937 rng(5);
    for (const char* name : {"t2_two_cosine", "t4_product"}) {
        const auto s = system_preset(name);
        for (int i = 0; i < 5; ++i) {
            const auto z = random_point(rng, s.dim());
            const auto r = flow(s, z, 1.0, FlowOptions{false, true});
            double drift = 0;
            for (const auto& p : r.trajectory) {
                drift = std::max(drift, std::abs(s.energy(0, p) - s.energy(0, z)));
            }
            CHECK(drift < 1e-9);
        }
    }
}

TEST_CASE("variational monodromy matches finite differences and is symplectic")
{
    std::mt19937 rng(17);
    for (const auto& name : smooth_presets()) {
        CAPTURE(name);
        const auto s = system_preset(name);
        for (int i = 0; i < 5; ++i) {
            const auto z = random_point(rng, s.dim());
            const auto r = flow(s, z);
            Eigen::MatrixXd fd(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim()));
            const double h = 1e-5;
            for (Eigen::Index j = 0; j < fd.cols(); ++j) {
                Eigen::VectorXd a = z, b = z;
                a(j) += h;
                b(j) -= h;
                fd.col(j) = (flow(s, a, 1.0, FlowOptions{false, false}).endpoint
                             - flow(s, b, 1.0, FlowOptions{false, false}).endpoint)
                            / (2 * h);
            }
            CHECK((fd - r.monodromy).cwiseAbs().maxCoeff() < 1e-6);
            CHECK(symplectic_defect(r.monodromy, s.n) < 1e-6);
        }
    }
}

TEST_CASE("halving the step barely moves the endpoint")
{
    std::mt19937 rng(23);
    for (const auto& name : smooth_presets()) {
        CAPTURE(name);
        const auto s = system_preset(name);
        auto fine = s;
        fine.steps = 2 * s.steps;
        for (int i = 0; i < 3; ++i) {
            const auto z = random_point(rng, s.dim());
            const double d = (flow(s, z).endpoint - flow(fine, z).endpoint).cwiseAbs().maxCoeff();
            CHECK(d < 1e-8);
        }
    }
}

TEST_CASE("too few steps are refused")
{
    auto s = system_preset("t2_two_cosine");
    s.steps = 10;
    CHECK_THROWS_AS(flow(s, Eigen::VectorXd::Zero(2)), IntegrationError);
    TorusSystem bad;
    bad.n = 1;
    bad.theta = {0.0};
    CHECK_THROWS_AS(bad.check(), PreconditionError);
}

TEST_CASE("orbits of the two-cosine system are its critical points")
{
    const auto s = system_preset("t2_two_cosine");
    const auto r = find_periodic_orbits(s);
    REQUIRE(r.orbits.size() == 4);
    std::map<int, int> indices;
    for (const auto& o : r.orbits) {
        CHECK(o.contractible());
        CHECK_FALSE(o.degenerate);
        CHECK(o.margin > 1e-3);
        CHECK(o.residual < 1e-10);
        for (Eigen::Index i = 0; i < 2; ++i) {
            const double c = o.base(i);
            CHECK(std::min({std::abs(c), std::abs(c - 0.5), std::abs(c - 1.0)}) < 1e-9);
        }
        REQUIRE(o.cz_index.has_value());
        ++indices[*o.cz_index];
        // constant orbit: action is the energy
        REQUIRE(o.action.has_value());
        CHECK(std::abs(*o.action - s.energy(0, o.base)) < 1e-9);
        CHECK(symplectic_defect(o.monodromy, 1) < 1e-6);
    }
    CHECK(indices == std::map<int, int>{{-1, 1}, {0, 2}, {1, 1}});
}

TEST_CASE("orbit search edge cases")
{
    CHECK(find_periodic_orbits(system_preset("t2_translation")).orbits.empty());
    OrbitSearchOptions coarse;
    coarse.grid = 2;
    CHECK_THROWS_AS(find_periodic_orbits(system_preset("t2_two_cosine"), coarse), PreconditionError);

    // theta + dH vanishes on the circles sin(2 pi x) = 0.02 / (0.1 pi): not isolated
    const auto deg = find_periodic_orbits(system_preset("t2_degenerate"));
    REQUIRE_FALSE(deg.orbits.empty());
    for (const auto& o : deg.orbits) {
        if (o.contractible()) {
            CHECK(o.degenerate);
            CHECK(std::abs(std::sin(2 * pi * o.base(0)) - 0.02 / (0.1 * pi)) < 1e-8);
        }
    }

    const auto small = find_periodic_orbits(system_preset("t2_small_class"));
    std::size_t contractible = 0;
    for (const auto& o : small.orbits) {
        if (o.contractible()) {
            ++contractible;
            CHECK_FALSE(o.degenerate);
        }
    }
    CHECK(contractible == 4);
}

TEST_CASE("orbit counts are stable under grid doubling")
{
    for (const char* name : {"t2_two_cosine", "t2_time_dependent", "t2_small_class"}) {
        CAPTURE(name);
        const auto s = system_preset(name);
        OrbitSearchOptions a, b;
        a.grid = 8;
        b.grid = 16;
        CHECK(find_periodic_orbits(s, a).orbits.size() == find_periodic_orbits(s, b).orbits.size());
    }
}

TEST_CASE("action of constant orbits and of a small circle")
{
    TorusSystem s;
    s.n = 1;
    s.theta = {0.3, -0.4};
    s.hamiltonian = {TrigTerm{0.05, {1, 0}, 0, 0.0}};
    Eigen::VectorXd z(2);
    z << 0.2, 0.7;
    const auto o = sampled_loop(std::vector<Eigen::VectorXd>(65, z));
    const double expected = 0.3 * 0.2 - 0.4 * 0.7 + s.energy(0, z);
    CHECK(std::abs(orbit_action(s, o) - expected) < 1e-12);
    Eigen::VectorXd e(2);
    e << 1, 2;
    const auto shifted = sampled_loop(std::vector<Eigen::VectorXd>(65, Eigen::VectorXd(z + e)));
    CHECK(std::abs(orbit_action(s, shifted) - orbit_action(s, o) - (0.3 * 1 - 0.4 * 2)) < 1e-12);

    TorusSystem flat;
    flat.n = 1;
    flat.theta = {0.0, 0.0};
    const double r = 0.1;
    std::vector<Eigen::VectorXd> circle;
    for (int j = 0; j <= 4096; ++j) {
        const double t = 2 * pi * j / 4096.0;
        Eigen::VectorXd p(2);
        p << 0.5 + r * std::cos(t), 0.5 + r * std::sin(t);
        circle.push_back(p);
    }
    CHECK(std::abs(orbit_action(flat, sampled_loop(circle)) + pi * r * r) < 1e-6);
    std::reverse(circle.begin(), circle.end());
    CHECK(std::abs(orbit_action(flat, sampled_loop(circle)) - pi * r * r) < 1e-6);

    PeriodicOrbit open = sampled_loop(circle);
    open.displacement = {1, 0};
    CHECK_THROWS_AS(orbit_action(flat, open), PreconditionError);
}

TEST_CASE("action does not depend on sampling density")
{
    auto s = system_preset("t2_time_dependent");
    auto fine = s;
    fine.steps = 2 * s.steps;
    const auto a = find_periodic_orbits(s);
    const auto b = find_periodic_orbits(fine);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (std::size_t i = 0; i < a.orbits.size(); ++i) {
        REQUIRE(a.orbits[i].action.has_value());
        CHECK(std::abs(*a.orbits[i].action - *b.orbits[i].action) < 1e-6);
        CHECK(loop_distance(a.orbits[i].trajectory, a.orbits[i].trajectory) == 0.0);
    }
}

TEST_CASE("Calabi class recovers theta")
{
    for (const auto& name : system_preset_names()) {
        CAPTURE(name);
        const auto s = system_preset(name);
        const auto cal = calabi_class(s);
        REQUIRE(cal.size() == s.theta.size());
        for (std::size_t i = 0; i < cal.size(); ++i) {
            CHECK(std::abs(cal[i] - s.theta[i]) < 1e-8);
        }
    }
}

TEST_CASE("verdicts of the main inequality")
{
    const auto two = verify_main_theorem(system_preset("t2_two_cosine"));
    CHECK(two.verdict == Verdict::pass);
    CHECK(two.contractible_orbits == 4);
    CHECK(two.betti_sum == 4);

    const auto integral = verify_main_theorem(system_preset("t2_integral_class"));
    CHECK(integral.verdict == Verdict::pass);
    CHECK(integral.betti_sum == 0);

    const auto t4 = verify_main_theorem(system_preset("t4_product"));
    CHECK(t4.verdict == Verdict::pass);
    CHECK(t4.contractible_orbits == 16);
    CHECK(t4.betti_sum == 16);
    CHECK(t4.min_margin > 1e-3);

    CHECK(verify_main_theorem(system_preset("t2_identity")).verdict == Verdict::hypothesis_violated);
    CHECK(verify_main_theorem(system_preset("t2_degenerate")).verdict == Verdict::hypothesis_violated);

    VerifyOptions dense;
    dense.densify = true;
    const auto d = verify_main_theorem(system_preset("t2_time_dependent"), dense);
    REQUIRE(d.densified_count.has_value());
    CHECK(*d.densified_count == d.contractible_orbits);
}
