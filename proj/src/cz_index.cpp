#include <novikov/cz_index.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include <novikov/error.hpp>

namespace novikov
{

namespace
{

constexpr double two_pi = 2 * std::numbers::pi;

// Largest increment allowed between consecutive samples of any tracked
// angle; anything bigger and the unwrapping is no longer trustworthy.
constexpr double max_angle_step = std::numbers::pi / 2;

double wrap_pi(double a)
{
    a = std::fmod(a + std::numbers::pi, two_pi);
    if (a < 0) {
        a += two_pi;
    }
    return a - std::numbers::pi;
}

double wrap_two_pi(double a)
{
    a = std::fmod(a, two_pi);
    return a < 0 ? a + two_pi : a;
}

// Accumulates the continuous lift of a sampled angle.
class AngleLift
{
public:
    explicit AngleLift(double start) : m_last(start), m_total(0)
    {
    }
    void push(double a, std::size_t sample)
    {
        const double d = wrap_pi(a - m_last);
        if (std::abs(d) >= max_angle_step) {
            throw PathError("angle jumps by " + std::to_string(d) + " near sample " + std::to_string(sample)
                            + "; too few samples to resolve the path");
        }
        m_total += d;
        m_last = a;
    }
    double total() const
    {
        return m_total;
    }

private:
    double m_last;
    double m_total;
};

} // namespace

Eigen::MatrixXd standard_symplectic(std::size_t n)
{
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    j.block(0, m, m, m) = -Eigen::MatrixXd::Identity(m, m);
    j.block(m, 0, m, m) = Eigen::MatrixXd::Identity(m, m);
    return j;
}

SymplecticPath::SymplecticPath(std::size_t n, std::vector<Eigen::MatrixXd> samples)
    : m_n(n), m_samples(std::move(samples))
{
    if (n == 0) {
        throw PathError("dimension must be positive");
    }
    const auto d = static_cast<Eigen::Index>(2 * n);
    for (std::size_t i = 0; i < m_samples.size(); ++i) {
        if (m_samples[i].rows() != d || m_samples[i].cols() != d) {
            throw PathError("sample " + std::to_string(i) + " is not " + std::to_string(d) + "x" + std::to_string(d));
        }
    }
}

void SymplecticPath::check(const PathTolerances& tol) const
{
    if (m_samples.size() < std::max<std::size_t>(tol.min_samples, 2)) {
        throw PathError("path has " + std::to_string(m_samples.size()) + " samples, fewer than "
                        + std::to_string(tol.min_samples));
    }
    const auto d = static_cast<Eigen::Index>(2 * m_n);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    if ((m_samples.front() - id).cwiseAbs().maxCoeff() > tol.identity_tol) {
        throw PathError("path does not start at the identity");
    }
    const Eigen::MatrixXd j = standard_symplectic(m_n);
    for (std::size_t i = 0; i < m_samples.size(); ++i) {
        const auto& s = m_samples[i];
        if (!s.allFinite() || (s.transpose() * j * s - j).cwiseAbs().maxCoeff() > tol.symplectic_tol) {
            throw PathError("sample " + std::to_string(i) + " is not symplectic");
        }
    }
    const double margin = std::abs((id - m_samples.back()).determinant());
    if (margin <= tol.degeneracy_threshold) {
        throw PathError("degenerate endpoint: |det(I - Psi(1))| = " + std::to_string(margin));
    }
}

int conley_zehnder_polar(const SymplecticPath& path, const PathTolerances& tol)
{
    if (path.n() != 1) {
        throw PathError("polar method needs n = 1");
    }
    path.check(tol);
    // M (M^T M)^{-1/2} is the rotation by this angle for any M in SL(2,R).
    const auto angle = [](const Eigen::MatrixXd& m) { return std::atan2(m(1, 0) - m(0, 1), m(0, 0) + m(1, 1)); };
    const auto& samples = path.samples();
    AngleLift lift(angle(samples.front()));
    for (std::size_t i = 1; i < samples.size(); ++i) {
        lift.push(angle(samples[i]), i);
    }
    const double turns = lift.total() / two_pi;
    const double trace = path.end().trace();
    if (trace < 2) {
        return 2 * static_cast<int>(std::floor(turns)) + 1;
    }
    return 2 * static_cast<int>(std::lround(turns));
}

int conley_zehnder_graph(const SymplecticPath& path, const PathTolerances& tol)
{
    path.check(tol);
    const auto d = static_cast<Eigen::Index>(2 * path.n());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd omega = -standard_symplectic(path.n());

    struct Frame {
        std::complex<double> det_z;
        Eigen::VectorXd angles; // eigen-angles of W in (-pi, pi]
    };
    // (v, Psi v) -> ((v + Psi v) / 2, Omega (Psi v - v)) carries the graph to a
    // Lagrangian of C^{2n} and the diagonal to R^{2n}; W = Z G^{-1} Z^T is the
    // unitary symmetric matrix of that Lagrangian.
    const auto frame = [&](const Eigen::MatrixXd& psi) {
        const Eigen::MatrixXd x = 0.5 * (id + psi);
        const Eigen::MatrixXd y = omega * (psi - id);
        const Eigen::MatrixXcd z = x.cast<std::complex<double>>() + std::complex<double>(0, 1) * y.cast<std::complex<double>>();
        const Eigen::MatrixXd g = x.transpose() * x + y.transpose() * y;
        const Eigen::MatrixXcd w = z * g.inverse().cast<std::complex<double>>() * z.transpose();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(w, false);
        Frame f;
        f.det_z = z.determinant();
        f.angles.resize(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            f.angles(i) = std::arg(es.eigenvalues()(i));
        }
        return f;
    };

    const auto& samples = path.samples();
    // The path leaves the identity with every eigen-angle at 0; the signs at
    // the first clearly separated sample give the half contributions.
    constexpr double eta = 1e-7;
    const std::size_t search_limit = std::max<std::size_t>(samples.size() / 4, 2);
    std::size_t start = 0;
    Frame first;
    for (std::size_t i = 1; i < search_limit; ++i) {
        first = frame(samples[i]);
        if (first.angles.cwiseAbs().minCoeff() > eta) {
            start = i;
            break;
        }
    }
    if (start == 0) {
        throw PathError("eigenvalues of the path stay at 1 near t = 0; initial crossing is degenerate");
    }
    int positive = 0, negative = 0;
    double sum_start = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        (first.angles(i) > 0 ? positive : negative) += 1;
        sum_start += wrap_two_pi(first.angles(i));
    }

    // arg det W = 2 arg det Z - arg det G, and det G > 0.
    AngleLift lift(std::arg(first.det_z));
    Frame last = first;
    for (std::size_t i = start + 1; i < samples.size(); ++i) {
        last = frame(samples[i]);
        lift.push(std::arg(last.det_z), i);
    }
    double sum_end = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        sum_end += wrap_two_pi(last.angles(i));
    }
    // Every counterclockwise passage of an eigenvalue through 1 drops the
    // [0, 2 pi) angle sum by 2 pi while the continuous phase keeps going.
    const double crossings = (2 * lift.total() - (sum_end - sum_start)) / two_pi;
    const long k = std::lround(crossings);
    if (std::abs(crossings - static_cast<double>(k)) > 1e-3) {
        throw PathError("crossing count is not an integer; path is too coarsely sampled");
    }
    return (positive - negative) / 2 + static_cast<int>(k);
}

int conley_zehnder(const SymplecticPath& path, const PathTolerances& tol)
{
    return path.n() == 1 ? conley_zehnder_polar(path, tol) : conley_zehnder_graph(path, tol);
}

int reduce_index(int index, std::optional<int> chern_number)
{
    if (!chern_number || *chern_number == 0) {
        return index;
    }
    const int m = 2 * *chern_number;
    return ((index % m) + m) % m;
}

} // namespace novikov
