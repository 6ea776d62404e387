#pragma once

// Cohomology of finite groups with coefficients in finite-dimensional
// F_p-representations: H^0, H^1, H^2 by explicit cochains, restriction and
// inflation, cup products, the cyclic norm formulas, and the local-global
// kernel Sha^1 relative to the family of all cyclic subgroups.
//
// Cocycle convention: f(gh) = f(g) + g.f(h) in degree 1, and
// g.f(h,k) - f(gh,k) + f(g,hk) - f(g,h) = 0 in degree 2.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hasse/fp_matrix.hpp"
#include "hasse/matgroup.hpp"

namespace hasse::coh {

class GModule;
using ModulePtr = std::shared_ptr<const GModule>;

/// Finite-dimensional F_p[G]-module given by one matrix per group element.
class GModule {
public:
    /// Validates action(1) = 1 and action(gh) = action(g) action(h) on the
    /// whole multiplication table. `determinant` is the det character when the
    /// group is a matrix group (needed for det twists), else empty.
    GModule(std::shared_ptr<const grp::FiniteGroup> group, std::uint32_t p, std::size_t dim,
            std::vector<fp::Matrix> action, std::string name,
            std::vector<fp::Elem> determinant = {});

    const std::shared_ptr<const grp::FiniteGroup>& group() const { return group_; }
    std::uint32_t p() const { return p_; }
    std::size_t dim() const { return dim_; }
    const fp::Matrix& action(int g) const { return action_[g]; }
    const std::string& name() const { return name_; }
    const std::vector<fp::Elem>& determinant() const { return det_; }

private:
    std::shared_ptr<const grp::FiniteGroup> group_;
    std::uint32_t p_;
    std::size_t dim_;
    std::vector<fp::Matrix> action_;
    std::string name_;
    std::vector<fp::Elem> det_;
};

// Module constructors --------------------------------------------------------

ModulePtr trivial_module(const grp::MatGroup& g, std::size_t dim = 1);
ModulePtr trivial_module(std::shared_ptr<const grp::FiniteGroup> g, std::uint32_t p,
                         std::size_t dim = 1);
/// F_p^2 with g acting by matrix multiplication.
ModulePtr standard_module(const grp::MatGroup& g);
/// Symmetric square, basis e_i e_j (i <= j) in lexicographic order.
ModulePtr sym2(const GModule& m);
/// Exterior square, basis e_i ^ e_j (i < j).
ModulePtr lambda2(const GModule& m);
/// Kronecker convention: basis e_i (x) f_j has index i * dim(b) + j.
ModulePtr tensor(const GModule& a, const GModule& b);
ModulePtr direct_sum(const GModule& a, const GModule& b);
/// action(g) * det(g)^k. Requires a module carrying the det character.
ModulePtr det_twist(const GModule& m, int k);
/// sym^2(V) twisted by det^-1.
ModulePtr ad(const grp::MatGroup& g);

/// The coefficient systems used throughout: trivial, V, sym2(V), ad, V (x) V.
enum class ModuleKind { Trivial, Standard, Sym2, Ad, TensorVV };
std::string to_string(ModuleKind k);
ModuleKind parse_module_kind(const std::string& name);
const std::vector<ModuleKind>& all_module_kinds();
ModulePtr build_module(ModuleKind kind, const grp::MatGroup& g);

/// Pull back along an injective group map (subgroup inclusion).
ModulePtr restrict_module(const GModule& m, const grp::Embedded& sub);

/// Basis of the invariants M^G.
std::vector<fp::Vec> h0(const GModule& m);

// Cochains -------------------------------------------------------------------

class CohomologyClass {
public:
    /// values: n*d entries for degree 1 (f(g) at offset g*d), n*n*d for
    /// degree 2 (f(g,h) at offset (g*n + h)*d).
    CohomologyClass(int degree, ModulePtr module, fp::Vec values);

    static CohomologyClass zero(int degree, ModulePtr module);

    int degree() const { return degree_; }
    const ModulePtr& module() const { return module_; }
    const fp::Vec& values() const { return values_; }
    std::span<const fp::Elem> value(int g) const;
    std::span<const fp::Elem> value(int g, int h) const;

    bool satisfies_cocycle_identity() const;
    bool is_normalized() const;
    bool is_zero_cochain() const { return fp::is_zero(values_); }

    CohomologyClass operator+(const CohomologyClass& rhs) const;
    CohomologyClass operator-(const CohomologyClass& rhs) const;
    CohomologyClass scaled(fp::Elem s) const;

private:
    int degree_;
    ModulePtr module_;
    fp::Vec values_;
};

/// Decided by solving for a coboundary. Throws if the input is not a cocycle.
bool is_coboundary(const CohomologyClass& c);
bool same_class(const CohomologyClass& a, const CohomologyClass& b);

struct CohomologyGroup {
    std::size_t dim = 0;                  // dim Z - dim B
    std::size_t cocycle_dim = 0;          // dim Z
    std::size_t coboundary_dim = 0;       // dim B
    std::vector<CohomologyClass> basis;   // representatives of a basis of Z/B
};

CohomologyGroup h1(const ModulePtr& m);
/// Normalized cochains; throws GroupTooLarge for |G| > kH2MaxOrder.
inline constexpr std::size_t kH2MaxOrder = 24;
CohomologyGroup h2_small(const ModulePtr& m);

/// Throws NotCyclic unless the module's group is cyclic.
std::size_t cyclic_h1(const GModule& m);
std::size_t cyclic_h2(const GModule& m);

/// Random element of Z^1 (uniform over the cocycle space).
CohomologyClass random_cocycle(const ModulePtr& m, std::mt19937_64& rng);
/// g -> (g - 1) v
CohomologyClass coboundary1(const ModulePtr& m, const fp::Vec& v);

// Maps between cohomology groups -----------------------------------------------

/// Restrict to a subgroup given with its inclusion. Degree is preserved.
CohomologyClass restriction(const CohomologyClass& c, const grp::Embedded& sub);
CohomologyClass restriction(const CohomologyClass& c, const grp::MatGroup& sub,
                            const grp::MatGroup& ambient);

/// Inflate a class over a quotient Q along projection G -> Q. `target` is the
/// G-module M and `embedding` (dim M x dim source) includes the source Q-module
/// into M; the G-action must factor through the projection on its image.
CohomologyClass inflation(const CohomologyClass& c, const grp::Hom& projection,
                          const ModulePtr& target, const fp::Matrix& embedding);

/// Apply an equivariant coefficient map (target.dim x source.dim).
CohomologyClass map_coefficients(const CohomologyClass& c, const fp::Matrix& map,
                                 const ModulePtr& target);

/// (a u b)(g, h) = a(g) (x) g.b(h), valued in tensor(A, B).
CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b);
/// Same product with a prebuilt tensor(A, B) module (avoids rebuilding it).
CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b, const ModulePtr& ab);
/// The swap B (x) A -> A (x) B as a permutation matrix.
fp::Matrix swap_matrix(std::uint32_t p, std::size_t dim_a, std::size_t dim_b);

/// Whether H^1(G, M) -> H^1(H, M) is injective.
bool restriction_injective(const ModulePtr& m, const grp::Embedded& sub);

// Local-global kernel ------------------------------------------------------------

struct ShaResult {
    std::size_t h1_dim = 0;
    std::size_t sha_dim = 0;
    std::size_t cyclic_count = 0;
    std::vector<CohomologyClass> basis;
};

/// Kernel of H^1(G, M) -> prod_C H^1(C, M) over every cyclic subgroup C.
ShaResult sha1(const ModulePtr& m);

// Checks -------------------------------------------------------------------------

struct SerreReport {
    std::uint32_t p;
    ModuleKind module;
    std::size_t h1_sl2 = 0;
    std::size_t h1_borel = 0;
    std::size_t h1_sylow = 0;
    bool injective = false;
    bool sylow_injective = false;
};

/// Restriction H^1(SL_2(F_p), M) -> H^1(B, M) with B the upper-triangular
/// subgroup of SL_2. p must be 3 or 5.
SerreReport serre_restriction_check(std::uint32_t p, ModuleKind module);

struct ExactnessReport {
    std::size_t h1_quotient = 0;   // H^1(G/N, M^N)
    std::size_t h1_group = 0;      // H^1(G, M)
    std::size_t h1_normal = 0;     // H^1(N, M)
    std::size_t image_inflation = 0;
    std::size_t kernel_restriction = 0;
    bool inflation_injective = false;
    bool image_in_kernel = false;
    bool exact = false;
};

/// 0 -> H^1(G/N, M^N) -> H^1(G, M) -> H^1(N, M). Throws NotNormal.
ExactnessReport inf_res_exactness_check(const grp::MatGroup& g, const grp::MatGroup& normal,
                                        const ModulePtr& m);

}  // namespace hasse::coh
