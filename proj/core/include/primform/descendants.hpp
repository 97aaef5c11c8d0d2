#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "primform/frobenius.hpp"

namespace primform {

/// sigma_level(O_index).
struct Insertion {
  int level = 0;
  int index = 0;
  friend auto operator<=>(const Insertion&, const Insertion&) = default;
};

using Insertions = std::vector<Insertion>;

struct CorrelatorKey {
  Insertions insertions;  // sorted
  int degree = 0;
  friend auto operator<=>(const CorrelatorKey&, const CorrelatorKey&) = default;
};

CorrelatorKey make_key(Insertions insertions, int degree);
std::string to_string(const CorrelatorKey& key);

struct Caps {
  int max_insertions = 5;
  int max_level = 3;
  int max_degree = 3;
};

void check_caps(const Caps& caps, const Insertions& insertions, int degree);

struct CorrelatorTable {
  Caps caps;
  std::map<CorrelatorKey, Rational> entries;
};

using CorrelatorFn = std::function<Rational(const Insertions&, int)>;

/// Every insertion list with at most caps.max_insertions entries over `dim` indices.
std::vector<Insertions> enumerate_insertions(int dim, const Caps& caps, int min_insertions = 1);

/// B-side: descendants of an LG Frobenius manifold.
class GravitationalDescendants {
 public:
  GravitationalDescendants(FrobeniusData fd, int max_degree);

  const FrobeniusData& data() const { return fd_; }
  std::size_t dim() const { return fd_.eta.size(); }
  int max_degree() const { return max_degree_; }

  /// Deformed flat function h_{l,d}; h_{l,-1} = eta_la t^a.
  const LaurentPoly& h(int l, int d);

  /// Coefficient of q^degree at the origin (exponential symbols at 1).
  Rational at_origin(const LaurentPoly& f, int degree) const;
  /// Value at the origin as a polynomial in the parameter.
  LaurentPoly at_origin(const LaurentPoly& f) const;

  /// Correlator with at most one descendant insertion.
  Rational correlator(const Insertions& insertions, int degree);
  /// Ancestor correlator: psi classes pulled back from the moduli of curves.
  Rational ancestor(const Insertions& insertions, int degree);
  /// sum_beta q^beta <sigma_k(O_j) O^i>_beta.
  LaurentPoly two_point(int j, int k, int i);

 private:
  LaurentPoly truncate(const LaurentPoly& p) const;

  FrobeniusData fd_;
  int max_degree_;
  Tensor3 raised_;  // C_ab^e
  std::map<std::pair<int, int>, LaurentPoly> h_;
  std::map<CorrelatorKey, Rational> ancestors_;
};

/// A-side: genus-0 descendant Gromov-Witten invariants of the projective line,
/// basis {1, omega}.
class CP1GromovWitten {
 public:
  Rational correlator(const Insertions& insertions, int degree);

 private:
  Rational compute(const Insertions& insertions, int degree);
  std::map<CorrelatorKey, Rational> memo_;
};

/// Linear change t -> t~ on the large phase space; symbols from descendant_symbol.
struct MirrorMap {
  std::map<std::pair<int, int>, LaurentPoly> image;  // (index, level) -> t~ as linear form
};

/// Symbol for t^index_level.
Symbol descendant_symbol(int index, int level);

MirrorMap mirror_map(GravitationalDescendants& b, const Caps& caps);
/// Evaluates t~ at a point given by (index, level) -> value.
std::map<std::pair<int, int>, LaurentPoly> apply_mirror_map(const MirrorMap& map,
                                                            const std::map<std::pair<int, int>, Rational>& point);

/// Sum over insertion lists of correlator / symmetry * q^beta * prod t^a_d, for n in [min_n, caps].
LaurentPoly free_energy(const CorrelatorFn& correlator, int dim, const Caps& caps, int min_insertions = 3);

struct Comparison {
  Rational max_discrepancy;
  std::size_t coefficients = 0;
  std::size_t nonzero = 0;
  std::string first_nonzero;
};

/// Phi^st(t) - Phi^grav(t~(t)), cubic and higher terms, q-degree within caps.
Comparison compare_free_energies(GravitationalDescendants& b, CP1GromovWitten& a, const Caps& caps);

/// Copy of fd with C_111 (and the potential) shifted by delta.
FrobeniusData corrupt_c111(const FrobeniusData& fd, const LaurentPoly& delta);

struct AxiomCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

/// String, dilaton and divisor equations for the projective line on every table entry.
std::vector<AxiomCheck> check_axioms(const CorrelatorTable& table, const CorrelatorFn& lookup);

/// Tabulates every insertion list within caps; max_descendants < 0 means no limit.
CorrelatorTable tabulate(const CorrelatorFn& correlator, int dim, const Caps& caps, int max_descendants = -1);

}  // namespace primform
