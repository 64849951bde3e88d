#ifndef NOVIKOV_CZ_INDEX_HPP
#define NOVIKOV_CZ_INDEX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace novikov
{

// J0 = [[0, -I], [I, 0]] in coordinates (x_1..x_n, y_1..y_n).
Eigen::MatrixXd standard_symplectic(std::size_t n);

struct PathTolerances {
    std::size_t min_samples = 512;
    double identity_tol = 1e-9;
    double symplectic_tol = 1e-6;
    double degeneracy_threshold = 1e-8;
};

// Samples Psi(t_i) of a path in Sp(2n) at uniform times t_i = i / (N - 1).
class SymplecticPath
{
public:
    SymplecticPath(std::size_t n, std::vector<Eigen::MatrixXd> samples);

    std::size_t n() const noexcept
    {
        return m_n;
    }
    const std::vector<Eigen::MatrixXd>& samples() const noexcept
    {
        return m_samples;
    }
    const Eigen::MatrixXd& end() const
    {
        return m_samples.back();
    }

    // Throws PathError if a precondition of conley_zehnder fails.
    void check(const PathTolerances& tol = {}) const;

private:
    std::size_t m_n;
    std::vector<Eigen::MatrixXd> m_samples;
};

// Normalized so that t -> rotation by 2 pi alpha t (alpha in (0,1)) in a
// single plane has index 1, and a minimum of an autonomous Hamiltonian with
// small Hessian gives n. Dispatches to the methods below.
int conley_zehnder(const SymplecticPath& path, const PathTolerances& tol = {});

// n = 1: rotation number of the polar part plus endpoint correction.
int conley_zehnder_polar(const SymplecticPath& path, const PathTolerances& tol = {});

// Any n: Maslov index of the graph of Psi relative to the diagonal, read off
// from the eigenvalue flow of the associated unitary matrix through 1.
int conley_zehnder_graph(const SymplecticPath& path, const PathTolerances& tol = {});

// Z/2N reduction of an index (identity when chern_number is empty).
int reduce_index(int index, std::optional<int> chern_number);

} // namespace novikov

#endif
