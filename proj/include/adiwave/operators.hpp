#pragma once

// Fourth-order difference operators on [0, 1] with N cells:
//   nodal compact scheme  P Vx = Q V  (and reduced P̄, Q̄ on interior nodes),
//   staggered mimetic divergence D (nodes -> centers) and gradient
//   G (centers + edges -> nodes).

#include "adiwave/exec.hpp"
#include "adiwave/linalg.hpp"

#include <array>
#include <cstddef>
#include <cstdint>

namespace adiwave {

struct Rational
{
    std::int64_t num;
    std::int64_t den = 1;

    [[nodiscard]] constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Coefficient tables in units of 1/h, exactly as they enter the matrices.
/// Bottom boundary rows are derived by reversal (P, P̄) or reversal with
/// negation (Q, Q̄, D, G).
namespace coefficients {

inline constexpr std::array<Rational, 2> p_boundary{{{6}, {18}}};
inline constexpr std::array<Rational, 3> p_interior{{{1}, {4}, {1}}};
inline constexpr std::array<Rational, 4> q_boundary{{{-17}, {9}, {9}, {-1}}};
inline constexpr std::array<Rational, 3> q_interior{{{-3}, {0}, {3}}};

inline constexpr std::array<Rational, 2> p_bar_boundary{{{6}, {6}}};
inline constexpr std::array<Rational, 4> q_bar_boundary{{{-1}, {-9}, {9}, {1}}};

inline constexpr std::array<Rational, 4> staggered_interior{{{1, 24}, {-9, 8}, {9, 8}, {-1, 24}}};

inline constexpr std::array<Rational, 6> d4_boundary{
    {{-4751, 5192}, {909, 1298}, {6091, 15576}, {-1165, 5192}, {129, 2596}, {-25, 15576}}};

inline constexpr std::array<Rational, 6> g4_boundary{
    {{-47888, 14245}, {1790, 407}, {-14545, 9768}, {8997, 16280}, {-2335, 22792}, {25, 9768}}};
inline constexpr std::array<Rational, 5> g4_near_boundary{{{16, 105}, {-31, 24}, {29, 24}, {-3, 40}, {1, 168}}};

} // namespace coefficients

inline constexpr std::size_t kMinCells = 8;

struct CfdOperatorSet
{
    std::size_t              n = 0;
    double                   h = 0.0;
    BandedOperator           p;     // (N+1) x (N+1)
    BandedOperator           q;     // (N+1) x (N+1), includes 1/h
    BandedOperator           p_bar; // (N-1) x (N-1)
    BandedOperator           q_bar; // (N-1) x (N+1), includes 1/h
    TridiagonalFactorization p_lu;
    TridiagonalFactorization p_bar_lu;
};

struct MimeticOperatorSet
{
    std::size_t    n = 0;
    double         h = 0.0;
    BandedOperator d4; // N x (N+1), includes 1/h
    BandedOperator g4; // (N+1) x (N+2), includes 1/h
};

/// Throws TooSmallGrid for N < 8.
CfdOperatorSet     build_cfd_operators(std::size_t n, double h);
MimeticOperatorSet build_mimetic_operators(std::size_t n, double h);

enum class Reduction
{
    full,    // all N+1 nodes, P and Q
    reduced, // interior nodes only, P̄ and Q̄
};

/// d/dx of every row of `m` (m.cols == N+1): out = (m Q^T) P^-T, or the
/// reduced pair. `out` has N+1 (full) or N-1 (reduced) columns.
void cfd_dx(const CfdOperatorSet& ops, ConstMatrixView m, MatrixView out, Reduction reduction, Exec exec = {});

/// d/dy of every column of `m` (m.rows == N+1): out = P^-1 (Q m), or reduced.
void cfd_dy(const CfdOperatorSet& ops, ConstMatrixView m, MatrixView out, Reduction reduction, Exec exec = {});

DenseMatrix cfd_differentiate_rows(const CfdOperatorSet& ops, ConstMatrixView m, Reduction reduction = Reduction::full,
                                   Exec exec = {});
DenseMatrix cfd_differentiate_cols(const CfdOperatorSet& ops, ConstMatrixView m, Reduction reduction = Reduction::full,
                                   Exec exec = {});

} // namespace adiwave
