#pragma once

// Finite groups: an abstract Cayley-table carrier (FiniteGroup) used by the
// cohomology code, and explicit subgroups of GL_2(F_p) (MatGroup) built on it.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hasse/fp_matrix.hpp"

namespace hasse::grp {

/// Group given by its full multiplication table. Elements are ids 0..n-1.
class FiniteGroup {
public:
    FiniteGroup(std::size_t order, std::vector<int> table, std::vector<int> generators);

    std::size_t order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    const std::vector<int>& generators() const { return generators_; }

    int element_order(int a) const;
    /// Same multiplication table (generating sets may differ).
    bool same_table(const FiniteGroup& other) const {
        return n_ == other.n_ && table_ == other.table_;
    }
    /// Sorted ids of the cyclic subgroup generated by a.
    std::vector<int> cyclic_closure(int a) const;

private:
    std::size_t n_;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<int> generators_;
    int identity_ = 0;
};

/// Map of element ids, domain id -> codomain id.
using Hom = std::vector<int>;

/// Throws NotHomomorphism if h does not respect the tables.
void check_homomorphism(const FiniteGroup& domain, const FiniteGroup& codomain, const Hom& h);
bool is_surjective(const FiniteGroup& codomain, const Hom& h);

struct CyclicSubgroup {
    int generator;
    std::vector<int> elements;  // sorted ids
};

/// Every cyclic subgroup once, in order of first appearance of a generator.
std::vector<CyclicSubgroup> cyclic_subgroups(const FiniteGroup& g);

bool is_subgroup(const FiniteGroup& g, std::span<const int> ids);
bool is_normal(const FiniteGroup& g, std::span<const int> ids);

struct Quotient {
    std::shared_ptr<const FiniteGroup> group;
    Hom projection;
};

/// G/N for N (given as element ids) normal in G. Throws NotNormal.
Quotient quotient(const FiniteGroup& g, std::span<const int> normal_ids);

/// Subgroup spanned by ids, as a standalone table together with its inclusion.
struct Embedded {
    std::shared_ptr<const FiniteGroup> group;
    Hom inclusion;
};
Embedded sub_table(const FiniteGroup& g, std::span<const int> ids);

// ---------------------------------------------------------------------------
// GL_2(F_p)

/// Invertible 2x2 matrix [[a, b], [c, d]] with entries in [0, p).
struct Mat2 {
    fp::Elem a = 1, b = 0, c = 0, d = 1;
    bool operator==(const Mat2&) const = default;
};

Mat2 make_mat2(std::uint32_t p, long long a, long long b, long long c, long long d);
Mat2 mul(const Mat2& x, const Mat2& y, std::uint32_t p);
fp::Elem det(const Mat2& x, std::uint32_t p);
Mat2 inverse(const Mat2& x, std::uint32_t p);
std::uint32_t encode(const Mat2& x, std::uint32_t p);
fp::Matrix to_matrix(const Mat2& x, std::uint32_t p);
std::string to_string(const Mat2& x);

/// Parses "a,b,c,d" (row-major integers).
Mat2 parse_mat2(const std::string& text, std::uint32_t p);

/// p(p-1)^2(p+1)
std::uint64_t gl2_order(std::uint32_t p);

class MatGroup {
public:
    /// Elements must be closed; they are sorted by encoding here.
    MatGroup(std::uint32_t p, std::vector<Mat2> elements, std::vector<Mat2> generators);

    std::uint32_t p() const { return p_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Mat2>& elements() const { return elements_; }
    const Mat2& element(int id) const { return elements_[id]; }
    const std::vector<Mat2>& generators() const { return generators_; }
    const std::vector<std::uint32_t>& codes() const { return codes_; }
    const std::shared_ptr<const FiniteGroup>& table() const { return table_; }

    std::optional<int> find(const Mat2& x) const;
    bool contains(const Mat2& x) const { return find(x).has_value(); }
    bool contains(const MatGroup& h) const;

    bool operator==(const MatGroup& rhs) const { return p_ == rhs.p_ && codes_ == rhs.codes_; }

private:
    std::uint32_t p_;
    std::vector<Mat2> elements_;
    std::vector<Mat2> generators_;
    std::vector<std::uint32_t> codes_;
    std::shared_ptr<const FiniteGroup> table_;
};

MatGroup close_subgroup(std::uint32_t p, std::span<const Mat2> gens);

MatGroup borel(std::uint32_t p);
MatGroup split_torus(std::uint32_t p);
MatGroup unipotent(std::uint32_t p);
MatGroup nonsplit_torus(std::uint32_t p);
MatGroup special_linear(std::uint32_t p);
MatGroup general_linear(std::uint32_t p);
/// Upper-triangular matrices of determinant 1.
MatGroup borel_special(std::uint32_t p);

/// Inclusion sub -> ambient on element ids. Throws NotSubgroup.
Hom inclusion(const MatGroup& sub, const MatGroup& ambient);
/// {c g c^-1 : g in g}
MatGroup conjugate(const MatGroup& g, const Mat2& c);
/// Element ids of h inside ambient.
std::vector<int> ids_in(const MatGroup& h, const MatGroup& ambient);

std::vector<MatGroup> enumerate_cyclic_subgroups(const MatGroup& g);
MatGroup sylow_p(const MatGroup& g);

/// Every subgroup of `ambient`, each once, sorted by (order, encoding).
/// Intended for small ambient groups (a few hundred elements at most).
std::vector<MatGroup> enumerate_subgroups(const MatGroup& ambient);
/// All subgroups of GL_2(F_3). Throws Unsupported for p != 3.
std::vector<MatGroup> enumerate_all_subgroups(std::uint32_t p);

struct Dichotomy {
    enum class Kind { BorelConjugate, ContainsSL2, Inconsistent };
    Kind kind;
    /// c with c g c^-1 upper triangular for all g, when one exists.
    std::optional<Mat2> witness;
    bool contains_sl2;
};

/// Requires p | |g|; throws HypothesisNotMet otherwise.
Dichotomy classify_dichotomy(const MatGroup& g);
std::optional<Mat2> borel_conjugator(const MatGroup& g);
bool contains_sl2(const MatGroup& g);
bool is_upper_triangular(const Mat2& x);

Mat2 random_gl2(std::uint32_t p, std::mt19937_64& rng);

}  // namespace hasse::grp
