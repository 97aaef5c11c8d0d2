#include "primform/descendants.hpp"

#include <algorithm>

#include "primform/error.hpp"

namespace primform {

CorrelatorKey make_key(Insertions insertions, int degree) {
  std::sort(insertions.begin(), insertions.end());
  return {std::move(insertions), degree};
}

std::string to_string(const CorrelatorKey& key) {
  std::string out = "<";
  for (std::size_t i = 0; i < key.insertions.size(); ++i) {
    if (i) out += " ";
    const auto& ins = key.insertions[i];
    out += "s" + std::to_string(ins.level) + "(O" + std::to_string(ins.index) + ")";
  }
  return out + ">_" + std::to_string(key.degree);
}

void check_caps(const Caps& caps, const Insertions& insertions, int degree) {
  if (static_cast<int>(insertions.size()) > caps.max_insertions) {
    throw Error(ErrorKind::CapsExceeded, "too many insertions");
  }
  if (degree > caps.max_degree) throw Error(ErrorKind::CapsExceeded, "degree above cap");
  for (const auto& ins : insertions) {
    if (ins.level > caps.max_level) throw Error(ErrorKind::CapsExceeded, "descendant level above cap");
  }
}

std::vector<Insertions> enumerate_insertions(int dim, const Caps& caps, int min_insertions) {
  std::vector<Insertion> alphabet;
  for (int d = 0; d <= caps.max_level; ++d) {
    for (int a = 0; a < dim; ++a) alphabet.push_back({d, a});
  }
  std::vector<Insertions> out;
  Insertions current;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(current.size()) >= min_insertions) out.push_back(current);
    if (static_cast<int>(current.size()) == caps.max_insertions) return;
    for (std::size_t k = from; k < alphabet.size(); ++k) {
      current.push_back(alphabet[k]);
      self(self, k);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

Symbol parameter_of(const FrobeniusData& fd) {
  if (fd.system.parameters.size() > 1) {
    throw Error(ErrorKind::Unsupported, "correlators need at most one Novikov parameter");
  }
  return fd.system.parameters.empty() ? sym("q") : fd.system.parameters.front();
}

// Splits `rest` into (chosen, remaining) for every subset mask.
template <typename F>
void for_each_split(const Insertions& rest, F&& f) {
  const std::size_t n = rest.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Insertions in, out;
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1 ? in : out).push_back(rest[k]);
    f(in, out);
  }
}

}  // namespace

// ------------------------------------------------------------------ B-side

GravitationalDescendants::GravitationalDescendants(FrobeniusData fd, int max_degree)
    : fd_(std::move(fd)), max_degree_(max_degree) {
  parameter_of(fd_);
  const std::size_t n = dim();
  raised_.assign(n, Matrix<LaurentPoly>(n, std::vector<LaurentPoly>(n)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t e = 0; e < n; ++e) {
        LaurentPoly s;
        for (std::size_t f = 0; f < n; ++f) {
          if (!fd_.eta_inverse[f][e].is_zero()) s += fd_.c[a][b][f] * fd_.eta_inverse[f][e];
        }
        raised_[a][b][e] = truncate(s);
      }
    }
  }
}

LaurentPoly GravitationalDescendants::truncate(const LaurentPoly& p) const {
  return p.truncated(parameter_of(fd_), max_degree_);
}

const LaurentPoly& GravitationalDescendants::h(int l, int d) {
  auto key = std::make_pair(l, d);
  if (auto it = h_.find(key); it != h_.end()) return it->second;
  const auto& coords = fd_.coordinates();
  const auto& rules = fd_.exp_rules();
  const std::size_t n = dim();
  LaurentPoly value;
  if (d < 0) {
    for (std::size_t a = 0; a < n; ++a) value += fd_.eta[l][a] * LaurentPoly::variable(coords[a]);
  } else {
    const LaurentPoly& below = h(l, d - 1);
    std::vector<LaurentPoly> grad_below;
    for (std::size_t e = 0; e < n; ++e) grad_below.push_back(below.diff(coords[e], rules));
    // d_a d_b h = C_ab^e d_e h_{l,d-1}
    std::vector<LaurentPoly> first;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<LaurentPoly> second;
      for (std::size_t b = 0; b < n; ++b) {
        LaurentPoly s;
        for (std::size_t e = 0; e < n; ++e) {
          if (!raised_[a][b][e].is_zero() && !grad_below[e].is_zero()) s += raised_[a][b][e] * grad_below[e];
        }
        second.push_back(truncate(s));
      }
      first.push_back(integrate_gradient(second, coords, rules));
    }
    value = drop_low_degree(integrate_gradient(first, coords, rules), coords, rules, 1);
  }
  return h_.emplace(key, std::move(value)).first->second;
}

LaurentPoly GravitationalDescendants::at_origin(const LaurentPoly& f) const {
  std::map<Symbol, LaurentPoly> origin;
  for (Symbol s : fd_.coordinates()) origin[s] = LaurentPoly();
  for (const auto& r : fd_.exp_rules()) origin[r.exp_symbol] = LaurentPoly(1);
  return f.substitute(origin);
}

Rational GravitationalDescendants::at_origin(const LaurentPoly& f, int degree) const {
  LaurentPoly v = at_origin(f).coefficient(parameter_of(fd_), degree);
  return v.is_zero() ? Rational(0) : v.constant_value();
}

Rational GravitationalDescendants::correlator(const Insertions& insertions, int degree) {
  if (insertions.empty() || degree < 0 || degree > max_degree_) return 0;
  auto top = std::max_element(insertions.begin(), insertions.end(),
                              [](const Insertion& a, const Insertion& b) { return a.level < b.level; });
  LaurentPoly f = h(top->index, top->level);
  bool skipped = false;
  for (const auto& ins : insertions) {
    if (!skipped && &ins == &*top) {
      skipped = true;
      continue;
    }
    if (ins.level != 0) throw Error(ErrorKind::Unsupported, "B-side correlators allow one descendant insertion");
    f = f.diff(fd_.coordinates()[ins.index], fd_.exp_rules());
  }
  return at_origin(f, degree);
}

Rational GravitationalDescendants::ancestor(const Insertions& insertions, int degree) {
  const std::size_t n = insertions.size();
  if (n < 3 || degree < 0 || degree > max_degree_) return 0;
  CorrelatorKey key = make_key(insertions, degree);
  if (auto it = ancestors_.find(key); it != ancestors_.end()) return it->second;
  const Insertions& ins = key.insertions;
  auto first_desc = std::find_if(ins.begin(), ins.end(), [](const Insertion& x) { return x.level > 0; });
  Rational value = 0;
  if (first_desc == ins.end()) {
    LaurentPoly f = fd_.potential;
    for (const auto& x : ins) f = f.diff(fd_.coordinates()[x.index], fd_.exp_rules());
    value = at_origin(truncate(f), degree);
  } else {
    // psi-bar_i = sum of boundary divisors separating i from the chosen j, k.
    Insertion lowered{first_desc->level - 1, first_desc->index};
    Insertions others;
    for (auto it = ins.begin(); it != ins.end(); ++it) {
      if (it != first_desc) others.push_back(*it);
    }
    Insertion j = others[0], k = others[1];
    Insertions rest(others.begin() + 2, others.end());
    const int dimension = static_cast<int>(dim());
    for_each_split(rest, [&](const Insertions& with_i, const Insertions& with_jk) {
      if (with_i.empty()) return;
      for (int e = 0; e < dimension; ++e) {
        for (int f = 0; f < dimension; ++f) {
          const LaurentPoly& g = fd_.eta_inverse[e][f];
          if (g.is_zero()) continue;
          Rational ginv = g.constant_value();
          Insertions left = with_i;
          left.push_back(lowered);
          left.push_back({0, e});
          Insertions right = with_jk;
          right.push_back(j);
          right.push_back(k);
          right.push_back({0, f});
          for (int b1 = 0; b1 <= degree; ++b1) {
            Rational l = ancestor(left, b1);
            if (l == 0) continue;
            value += l * ginv * ancestor(right, degree - b1);
          }
        }
      }
    });
  }
  return ancestors_.emplace(std::move(key), value).first->second;
}

LaurentPoly GravitationalDescendants::two_point(int j, int k, int i) {
  const auto& coords = fd_.coordinates();
  LaurentPoly s;
  for (std::size_t b = 0; b < dim(); ++b) {
    if (!fd_.eta_inverse[i][b].is_zero()) s += fd_.eta_inverse[i][b] * h(j, k).diff(coords[b], fd_.exp_rules());
  }
  return truncate(at_origin(s));
}

// ------------------------------------------------------------------ A-side

namespace {

// omega^a cup omega^b on the projective line; -1 when it vanishes.
int cup(int a, int b) { return a + b <= 1 ? a + b : -1; }

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

Rational CP1GromovWitten::correlator(const Insertions& insertions, int degree) {
  CorrelatorKey key = make_key(insertions, degree);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational value = compute(key.insertions, degree);
  return memo_.emplace(std::move(key), value).first->second;
}

Rational CP1GromovWitten::compute(const Insertions& ins, int degree) {
  const int n = static_cast<int>(ins.size());
  if (n == 0 || degree < 0) return 0;
  int levels = 0, codim = 0;
  for (const auto& x : ins) {
    levels += x.level;
    codim += x.index;
  }
  if (levels + codim != 2 * degree + n - 2) return 0;
  if (degree == 0) {
    // Classical: integral over M_{0,n} x P^1.
    if (n < 3 || codim != 1) return 0;
    Rational v(factorial(n - 3));
    for (const auto& x : ins) v /= factorial(x.level);
    return v;
  }
  if (levels == 0) {
    // omega^n at degree 1; any unit insertion kills a primary stable invariant.
    return degree == 1 && codim == n ? 1 : 0;
  }
  if (n >= 3) {
    auto i = std::find_if(ins.begin(), ins.end(), [](const Insertion& x) { return x.level > 0; });
    Insertion lowered{i->level - 1, i->index};
    Insertions others;
    for (auto it = ins.begin(); it != ins.end(); ++it) {
      if (it != i) others.push_back(*it);
    }
    Insertion j = others[0], k = others[1];
    Insertions rest(others.begin() + 2, others.end());
    Rational value = 0;
    for_each_split(rest, [&](const Insertions& with_i, const Insertions& with_jk) {
      for (int e = 0; e < 2; ++e) {
        Insertions left = with_i;
        left.push_back(lowered);
        left.push_back({0, e});
        Insertions right = with_jk;
        right.push_back(j);
        right.push_back(k);
        right.push_back({0, 1 - e});  // antidiagonal Poincare pairing
        for (int b1 = 0; b1 <= degree; ++b1) {
          Rational l = correlator(left, b1);
          if (l != 0) value += l * correlator(right, degree - b1);
        }
      }
    });
    return value;
  }
  // Divisor equation solved for the shorter correlator.
  Insertions with_divisor = ins;
  with_divisor.push_back({0, 1});
  Rational value = correlator(with_divisor, degree);
  for (std::size_t k = 0; k < ins.size(); ++k) {
    int c = cup(1, ins[k].index);
    if (ins[k].level == 0 || c < 0) continue;
    Insertions moved = ins;
    moved[k] = {ins[k].level - 1, c};
    value -= correlator(moved, degree);
  }
  return value / degree;
}

// ------------------------------------------------------------ mirror map

Symbol descendant_symbol(int index, int level) {
  return sym("T" + std::to_string(index) + "_" + std::to_string(level));
}

MirrorMap mirror_map(GravitationalDescendants& b, const Caps& caps) {
  MirrorMap map;
  const int n = static_cast<int>(b.dim());
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d <= caps.max_level; ++d) {
      LaurentPoly image = LaurentPoly::variable(descendant_symbol(i, d));
      for (int j = 0; j < n; ++j) {
        for (int e = d + 1; e <= caps.max_level; ++e) {
          LaurentPoly coeff = b.two_point(j, e - d - 1, i);
          if (!coeff.is_zero()) image += coeff * LaurentPoly::variable(descendant_symbol(j, e));
        }
      }
      map.image[{i, d}] = image;
    }
  }
  return map;
}

std::map<std::pair<int, int>, LaurentPoly> apply_mirror_map(const MirrorMap& map,
                                                            const std::map<std::pair<int, int>, Rational>& point) {
  std::map<Symbol, LaurentPoly> values;
  for (const auto& [key, image] : map.image) {
    auto it = point.find(key);
    values[descendant_symbol(key.first, key.second)] = it == point.end() ? LaurentPoly() : LaurentPoly(it->second);
  }
  std::map<std::pair<int, int>, LaurentPoly> out;
  for (const auto& [key, image] : map.image) out[key] = image.substitute(values);
  return out;
}

// ------------------------------------------------------------ free energies

LaurentPoly free_energy(const CorrelatorFn& correlator, int dim, const Caps& caps, int min_insertions) {
  LaurentPoly out;
  Symbol q = sym("q");
  for (const auto& ins : enumerate_insertions(dim, caps, min_insertions)) {
    Monomial m;
    Rational symmetry = 1;
    for (std::size_t k = 0; k < ins.size(); ++k) {
      m = m * Monomial::of(descendant_symbol(ins[k].index, ins[k].level));
      std::size_t run = 1;
      while (k + run < ins.size() && ins[k + run] == ins[k]) ++run;
      if (k == 0 || ins[k - 1] != ins[k]) symmetry *= factorial(static_cast<int>(run));
    }
    for (int beta = 0; beta <= caps.max_degree; ++beta) {
      Rational v = correlator(ins, beta);
      if (v != 0) out += LaurentPoly::term(v / symmetry, m * Monomial::of(q, beta));
    }
  }
  return out;
}

FrobeniusData corrupt_c111(const FrobeniusData& fd, const LaurentPoly& delta) {
  FrobeniusData bad = fd;
  Symbol t1 = fd.coordinates().at(1);
  bad.potential += delta * LaurentPoly::variable(t1).pow(3).scaled(ratio(1, 6));
  bad.c = third_derivatives(bad.potential, bad.coordinates(), bad.exp_rules());
  return bad;
}

Comparison compare_free_energies(GravitationalDescendants& b, CP1GromovWitten& a, const Caps& caps) {
  const int dim = static_cast<int>(b.dim());
  Symbol q = sym("q");
  LaurentPoly st = free_energy([&](const Insertions& i, int beta) { return a.correlator(i, beta); }, dim, caps);
  LaurentPoly grav = free_energy([&](const Insertions& i, int beta) { return b.ancestor(i, beta); }, dim, caps);
  MirrorMap map = mirror_map(b, caps);
  std::map<Symbol, LaurentPoly> subst;
  for (const auto& [key, image] : map.image) subst[descendant_symbol(key.first, key.second)] = image;
  LaurentPoly pulled = grav.substitute(subst).truncated(q, caps.max_degree);

  std::vector<Symbol> vars;
  for (const auto& [key, image] : map.image) vars.push_back(descendant_symbol(key.first, key.second));
  LaurentPoly diff = st - pulled;
  Comparison out;
  out.max_discrepancy = 0;
  out.coefficients = (st + pulled).size();
  for (const auto& [m, c] : diff.terms()) {
    int deg = 0;
    for (Symbol s : vars) deg += m.exponent(s);
    if (deg < 3 || deg > caps.max_insertions) continue;
    ++out.nonzero;
    Rational mag = abs(c);
    if (mag > out.max_discrepancy) out.max_discrepancy = mag;
    if (out.first_nonzero.empty()) out.first_nonzero = LaurentPoly::term(c, m).to_string();
  }
  return out;
}

// ------------------------------------------------------------ axioms

CorrelatorTable tabulate(const CorrelatorFn& correlator, int dim, const Caps& caps, int max_descendants) {
  CorrelatorTable table{caps, {}};
  for (const auto& ins : enumerate_insertions(dim, caps, 1)) {
    if (max_descendants >= 0) {
      int count = static_cast<int>(std::count_if(ins.begin(), ins.end(), [](const Insertion& x) { return x.level > 0; }));
      if (count > max_descendants) continue;
    }
    for (int beta = 0; beta <= caps.max_degree; ++beta) {
      Rational v = correlator(ins, beta);
      if (v != 0) table.entries[make_key(ins, beta)] = v;
    }
  }
  return table;
}

std::vector<AxiomCheck> check_axioms(const CorrelatorTable& table, const CorrelatorFn& lookup) {
  AxiomCheck string{"string", 0, 0, ""}, dilaton{"dilaton", 0, 0, ""}, divisor{"divisor", 0, 0, ""};
  auto record = [](AxiomCheck& check, bool ok, const CorrelatorKey& key) {
    ++check.checked;
    if (!ok) {
      ++check.failed;
      if (check.first_failure.empty()) check.first_failure = to_string(key);
    }
  };
  for (const auto& [key, value] : table.entries) {
    const Insertions& ins = key.insertions;
    const int beta = key.degree;
    const int n = static_cast<int>(ins.size());
    auto without = [&](std::size_t k) {
      Insertions rest = ins;
      rest.erase(rest.begin() + static_cast<long>(k));
      return rest;
    };
    auto find = [&](Insertion x) {
      return static_cast<std::size_t>(std::find(ins.begin(), ins.end(), x) - ins.begin());
    };
    // Checks are applied where the shorter correlator is stable.
    bool stable_rest = n - 1 >= 3 || (beta > 0 && n - 1 >= 1);
    if (std::size_t k = find({0, 0}); k < ins.size() && stable_rest) {
      Insertions rest = without(k);
      Rational expected = 0;
      for (std::size_t m = 0; m < rest.size(); ++m) {
        if (rest[m].level == 0) continue;
        Insertions lowered = rest;
        --lowered[m].level;
        expected += lookup(lowered, beta);
      }
      record(string, expected == value, key);
    }
    if (std::size_t k = find({1, 0}); k < ins.size() && stable_rest) {
      record(dilaton, lookup(without(k), beta) * (n - 1 - 2) == value, key);
    }
    if (std::size_t k = find({0, 1}); k < ins.size() && beta >= 1 && n - 1 >= 1) {
      Insertions rest = without(k);
      Rational expected = lookup(rest, beta) * beta;
      for (std::size_t m = 0; m < rest.size(); ++m) {
        int c = cup(1, rest[m].index);
        if (rest[m].level == 0 || c < 0) continue;
        Insertions moved = rest;
        moved[m] = {rest[m].level - 1, c};
        expected += lookup(moved, beta);
      }
      record(divisor, expected == value, key);
    }
  }
  return {string, dilaton, divisor};
}

}  // namespace primform
