#pragma once

// The period lattice Lambda_2l = Z omega + U + U + E8(-1) + E8(-1) of a
// degree-2l quasi-polarized K3 surface, its discriminant group, level/type
// invariants of primitive vectors, their canonical representatives, and the
// dictionary between Noether-Lefschetz labels (d, g) and Heegner labels
// (n, gamma).
//
// Basis order: omega, u1, v1, u2, v2, then the two E8(-1) blocks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "k3kit/arith.hpp"
#include "k3kit/error.hpp"

namespace k3kit {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) {
                throw InvalidArgument("IntMatrix: ragged rows");
            }
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<std::vector<std::int64_t>> to_rows() const {
        std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out[i][j] = (*this)(i, j);
            }
        }
        return out;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Block-diagonal sum.
inline IntMatrix direct_sum(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        n += b.rows();
    }
    IntMatrix out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(off + i, off + j) = b(i, j);
            }
        }
        off += b.rows();
    }
    return out;
}

/// Integral lattice given by a symmetric Gram matrix with even diagonal.
class EvenLattice {
public:
    explicit EvenLattice(IntMatrix gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols()) {
            throw InvalidArgument("EvenLattice: Gram matrix must be square");
        }
        for (std::size_t i = 0; i < gram_.rows(); ++i) {
            if (gram_(i, i) % 2 != 0) {
                throw InvalidArgument("EvenLattice: diagonal entry " + std::to_string(i) + " is odd");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (gram_(i, j) != gram_(j, i)) {
                    throw InvalidArgument("EvenLattice: Gram matrix is not symmetric");
                }
            }
        }
    }

    const IntMatrix& gram() const noexcept { return gram_; }
    std::size_t rank() const noexcept { return gram_.rows(); }

    Integer pairing(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
        check_length(x);
        check_length(y);
        Integer s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) {
                continue;
            }
            Integer row = 0;
            for (std::size_t j = 0; j < rank(); ++j) {
                row += Integer(gram_(i, j)) * y[j];
            }
            s += row * x[i];
        }
        return s;
    }

    Integer norm(const std::vector<std::int64_t>& x) const { return pairing(x, x); }

    /// gram * x, i.e. the pairings of x with every basis vector.
    std::vector<Integer> pairings_with_basis(const std::vector<std::int64_t>& x) const {
        check_length(x);
        std::vector<Integer> out(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j) {
                out[i] += Integer(gram_(i, j)) * x[j];
            }
        }
        return out;
    }

    void check_length(const std::vector<std::int64_t>& x) const {
        if (x.size() != rank()) {
            throw InvalidArgument("vector has length " + std::to_string(x.size()) + ", lattice rank is " +
                                  std::to_string(rank()));
        }
    }

private:
    IntMatrix gram_;
};

// ---------------------------------------------------------------------------
// Building blocks

inline IntMatrix hyperbolic_plane() { return IntMatrix::from_rows({{0, 1}, {1, 0}}); }

/// E8(-1): negated Cartan matrix of E8 (Bourbaki labelling, node 2 attached to node 4).
inline IntMatrix e8_negative() {
    IntMatrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        m(i, i) = -2;
    }
    // Bourbaki nodes 1..8 stored at indices 0..7.
    const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (auto [a, b] : edges) {
        m(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)) = 1;
        m(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(a - 1)) = 1;
    }
    return m;
}

inline constexpr std::size_t kLambdaRank = 21;
inline constexpr std::size_t kOmega = 0;
inline constexpr std::size_t kU1 = 1;
inline constexpr std::size_t kV1 = 2;

inline EvenLattice lambda_gram(std::int64_t l) {
    if (l < 1) {
        throw InvalidArgument("lambda_gram: l must be >= 1");
    }
    IntMatrix omega(1, 1);
    omega(0, 0) = -2 * l;
    return EvenLattice(direct_sum({omega, hyperbolic_plane(), hyperbolic_plane(), e8_negative(), e8_negative()}));
}

// ---------------------------------------------------------------------------
// Smith normal form

/// Diagonal of the Smith normal form, d_1 | d_2 | ... , all non-negative.
inline std::vector<Integer> smith_diagonal(const IntMatrix& input) {
    const std::size_t rows = input.rows();
    const std::size_t cols = input.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            a[i][j] = input(i, j);
        }
    }

    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        // Pivot: smallest non-zero absolute value in the remaining block.
        auto find_pivot = [&]() -> std::pair<std::size_t, std::size_t> {
            std::pair<std::size_t, std::size_t> best{rows, cols};
            Integer best_abs = 0;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (a[i][j] != 0 && (best_abs == 0 || abs(a[i][j]) < best_abs)) {
                        best_abs = abs(a[i][j]);
                        best = {i, j};
                    }
                }
            }
            return best;
        };

        auto [pi, pj] = find_pivot();
        if (pi == rows) {
            break;  // remaining block is zero
        }
        for (;;) {
            std::swap(a[t], a[pi]);
            for (auto& row : a) {
                std::swap(row[t], row[pj]);
            }
            bool clean = true;
            // Reduce column t and row t modulo the pivot.
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) {
                    continue;
                }
                const Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) {
                    a[i][j] -= q * a[t][j];
                }
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) {
                    continue;
                }
                const Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) {
                    a[i][j] -= q * a[i][t];
                }
                clean = clean && a[t][j] == 0;
            }
            if (clean) {
                // Divisibility: the pivot must divide the rest of the block.
                std::size_t bad_i = rows;
                for (std::size_t i = t + 1; i < rows && bad_i == rows; ++i) {
                    for (std::size_t j = t + 1; j < cols; ++j) {
                        if (a[i][j] % a[t][t] != 0) {
                            bad_i = i;
                            break;
                        }
                    }
                }
                if (bad_i == rows) {
                    break;
                }
                for (std::size_t j = t; j < cols; ++j) {
                    a[t][j] += a[bad_i][j];
                }
            }
            std::tie(pi, pj) = find_pivot();
        }
    }

    std::vector<Integer> diag;
    for (std::size_t t = 0; t < n; ++t) {
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

/// Non-trivial elementary divisors of the discriminant group L^v / L.
inline std::vector<Integer> discriminant_group(const EvenLattice& lattice) {
    std::vector<Integer> out;
    for (const Integer& d : smith_diagonal(lattice.gram())) {
        if (d == 0) {
            throw InvalidArgument("discriminant_group: Gram matrix is degenerate");
        }
        if (d != 1) {
            out.push_back(d);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Primitive vectors

struct PrimitiveVectorClass {
    Integer norm;
    std::int64_t level = 0;
    std::int64_t type = 0;  // in [0, 2l)

    friend bool operator==(const PrimitiveVectorClass&, const PrimitiveVectorClass&) = default;
};

using LatticeVector = std::vector<std::int64_t>;

inline std::int64_t content(const LatticeVector& v) {
    std::int64_t g = 0;
    for (std::int64_t x : v) {
        g = std::gcd(g, x);
    }
    return g;
}

/// Norm, level and type of a primitive vector of Lambda_2l.  The lattice must
/// have the basis layout of lambda_gram: omega first, orthogonal to a
/// unimodular complement.
inline PrimitiveVectorClass invariants_of(const LatticeVector& v, const EvenLattice& lattice) {
    lattice.check_length(v);
    const IntMatrix& g = lattice.gram();
    const std::int64_t two_l = -g(kOmega, kOmega);
    if (two_l <= 0) {
        throw InvalidArgument("invariants_of: first basis vector must have negative norm -2l");
    }
    for (std::size_t j = 1; j < lattice.rank(); ++j) {
        if (g(kOmega, j) != 0) {
            throw InvalidArgument("invariants_of: omega must be orthogonal to the rest of the basis");
        }
    }
    if (content(v) != 1) {
        throw InvalidArgument("invariants_of: vector is not primitive");
    }

    PrimitiveVectorClass cls;
    cls.norm = lattice.norm(v);
    Integer level = 0;
    for (const Integer& p : lattice.pairings_with_basis(v)) {
        level = gcd(level, abs(p));
    }
    if (level == 0) {
        throw InvalidArgument("invariants_of: vector lies in the kernel of the Gram matrix");
    }
    cls.level = level.convert_to<std::int64_t>();
    // v/k = (c0/k) omega + (integral part), and (c0/k) omega = (2l c0/k) (omega/2l).
    const Integer d = Integer(two_l) * v[kOmega] / cls.level;
    Integer r = d % two_l;
    if (r < 0) {
        r += two_l;
    }
    cls.type = r.convert_to<std::int64_t>();
    return cls;
}

/// The level forced by a type: the order of d * (omega / 2l) in Z/2l.
inline std::int64_t level_of_type(std::int64_t d, std::int64_t l) {
    const std::int64_t two_l = 2 * l;
    return two_l / std::gcd(two_l, ((d % two_l) + two_l) % two_l);
}

/// Canonical representative (dk/2l) omega + k (u1 + m v1) with
/// m = N/2k^2 + d^2/4l.  Rejects (N, k, d) that do not label a class of
/// primitive vectors.
inline LatticeVector canonical_primitive(const Integer& norm, std::int64_t level, std::int64_t type, std::int64_t l) {
    if (l < 1) {
        throw InvalidArgument("canonical_primitive: l must be >= 1");
    }
    if (level < 1) {
        throw InvalidArgument("canonical_primitive: level must be positive");
    }
    const std::int64_t two_l = 2 * l;
    const std::int64_t d = ((type % two_l) + two_l) % two_l;
    if (two_l % level != 0) {
        throw InvalidArgument("canonical_primitive: level " + std::to_string(level) + " does not divide 2l");
    }
    if ((d * level) % two_l != 0) {
        throw InvalidArgument("canonical_primitive: omega coefficient dk/2l is not integral");
    }
    if (level != level_of_type(d, l)) {
        throw InvalidArgument("canonical_primitive: level " + std::to_string(level) + " is inconsistent with type " +
                              std::to_string(d) + " (expected " + std::to_string(level_of_type(d, l)) + ")");
    }
    const Rational m = Rational(norm, Integer(2) * level * level) + Rational(Integer(d) * d, Integer(4) * l);
    if (!is_integer(m)) {
        throw InvalidArgument("canonical_primitive: m = " + to_string(m) + " is not an integer");
    }
    LatticeVector v(kLambdaRank, 0);
    v[kOmega] = d * level / two_l;
    v[kU1] = level;
    v[kV1] = level * boost::multiprecision::numerator(m).convert_to<std::int64_t>();
    return v;
}

// ---------------------------------------------------------------------------
// Noether-Lefschetz <-> Heegner

struct NLLabel {
    std::int64_t d = 0;
    std::int64_t g = 0;
    std::int64_t l = 1;

    friend bool operator==(const NLLabel&, const NLLabel&) = default;
};

struct HeegnerLabel {
    Rational n;
    std::int64_t gamma = 0;

    friend bool operator==(const HeegnerLabel&, const HeegnerLabel&) = default;
};

/// Delta_{d,g} = d^2 - 4l(g-1), minus the determinant of [[2l, d], [d, 2g-2]].
inline Integer discriminant_delta(const NLLabel& label) {
    return Integer(label.d) * label.d - Integer(4) * label.l * (label.g - 1);
}

inline void validate(const NLLabel& label) {
    if (label.l < 1) {
        throw InvalidArgument("NL label: l must be >= 1");
    }
    if (label.d < 0 || label.g < 0) {
        throw InvalidArgument("NL label: d and g must be non-negative");
    }
}

inline HeegnerLabel nl_to_heegner(const NLLabel& label) {
    validate(label);
    const Integer delta = discriminant_delta(label);
    if (delta <= 0) {
        throw InvalidArgument("nl_to_heegner: Delta = " + delta.str() + " <= 0 for (d, g, l) = (" +
                              std::to_string(label.d) + ", " + std::to_string(label.g) + ", " +
                              std::to_string(label.l) + "); not a divisor label");
    }
    return {Rational(-delta, Integer(4) * label.l), label.d % (2 * label.l)};
}

/// <v, v> for v = beta - (d/2l) L, computed in the rank-2 lattice spanned by
/// L and beta: (2g - 2) - d^2 / 2l.
inline Rational projection_norm_oracle(const NLLabel& label) {
    validate(label);
    return Rational(2 * label.g - 2) - Rational(Integer(label.d) * label.d, Integer(2) * label.l);
}

/// Level, norm and canonical representative of the primitive vector attached
/// to a Noether-Lefschetz label.
struct HeegnerClass {
    NLLabel nl;
    HeegnerLabel label;
    std::int64_t level = 0;
    Integer norm;
    LatticeVector representative;

    friend bool operator==(const HeegnerClass&, const HeegnerClass&) = default;
};

inline HeegnerClass heegner_class(const NLLabel& nl) {
    HeegnerClass out;
    out.nl = nl;
    out.label = nl_to_heegner(nl);
    out.level = level_of_type(out.label.gamma, nl.l);
    const Rational norm = 2 * out.label.n * out.level * out.level;
    if (!is_integer(norm)) {
        throw IntegralityError("heegner_class: norm 2nk^2 is not integral");
    }
    out.norm = boost::multiprecision::numerator(norm);
    out.representative = canonical_primitive(out.norm, out.level, out.label.gamma, nl.l);
    return out;
}

/// Human-readable form such as "omega + 6u1 - v1".
inline std::string describe_vector(const LatticeVector& v) {
    static const char* const names[] = {"omega", "u1", "v1", "u2", "v2"};
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) {
            continue;
        }
        const std::string name = i < 5 ? names[i] : "e" + std::to_string(i - 4);
        const std::int64_t c = v[i];
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const std::int64_t mag = c < 0 ? -c : c;
        if (mag != 1) {
            out += std::to_string(mag);
        }
        out += name;
    }
    return out.empty() ? "0" : out;
}

} // namespace k3kit
