#include "facta/matgrp.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>

namespace facta::matgrp {

using arith::Integer;

// -------------------------------------------------------------------- Field

namespace {

// Little-endian polynomial helpers over F_p.
using Poly = std::vector<FF>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_trim(std::move(c));
}

// a mod m, m monic.
Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
  a = poly_trim(std::move(a));
  while (a.size() >= m.size()) {
    FF lead = a.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      FF sub = (FF)((uint64_t)lead * m[i] % p);
      FF& t = a[shift + i];
      t = (t + p - sub) % p;
    }
    a = poly_trim(std::move(a));
  }
  return a;
}

bool poly_is_zero(const Poly& a) { return poly_trim(a).empty(); }

// Irreducibility by trial division; fine for the tiny degrees used here.
bool poly_irreducible(const Poly& m, uint32_t p) {
  uint32_t deg = (uint32_t)m.size() - 1;
  if (deg == 0) return false;
  if (m[0] == 0) return deg == 1;  // divisible by x
  uint32_t half = deg / 2;
  // iterate monic divisors of degree 1..half
  for (uint32_t d = 1; d <= half; ++d) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    for (uint64_t code = 0; code < count; ++code) {
      Poly div(d + 1, 0);
      uint64_t c = code;
      for (uint32_t i = 0; i < d; ++i) {
        div[i] = (FF)(c % p);
        c /= p;
      }
      div[d] = 1;
      if (poly_is_zero(poly_mod(m, div, p))) return false;
    }
  }
  return true;
}

Poly default_modulus(uint32_t p, uint32_t f) {
  if (f == 1) return {0, 1};  // x, unused
  uint64_t count = 1;
  for (uint32_t i = 0; i < f; ++i) count *= p;
  for (uint64_t code = 0; code < count; ++code) {
    Poly m(f + 1, 0);
    uint64_t c = code;
    for (uint32_t i = 0; i < f; ++i) {
      m[i] = (FF)(c % p);
      c /= p;
    }
    m[f] = 1;
    if (poly_irreducible(m, p)) return m;
  }
  throw argument_error("default_modulus: no irreducible polynomial found");
}

}  // namespace

Field::Field(uint32_t p, uint32_t f) : Field(p, f, default_modulus(p, f)) {}

Field::Field(uint32_t p, uint32_t f, std::vector<FF> modulus) {
  if (!arith::is_prime((uint64_t)p)) throw argument_error("Field: p must be prime");
  if (f < 1) throw argument_error("Field: f must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > (1u << 16)) throw argument_error("Field: q exceeds 2^16");
  }
  spec_.p = p;
  spec_.f = f;
  spec_.q = (uint32_t)q;
  if (f > 1) {
    if (modulus.size() != f + 1 || modulus[f] != 1)
      throw argument_error("Field: modulus must be monic of degree f");
    for (FF c : modulus)
      if (c >= p) throw argument_error("Field: modulus coefficient out of range");
    if (!poly_irreducible(modulus, p)) throw argument_error("Field: modulus is reducible");
  }
  spec_.modulus = std::move(modulus);
  build_tables();
}

namespace {

Poly code_to_poly(FF code, uint32_t p) {
  Poly out;
  while (code) {
    out.push_back(code % p);
    code /= p;
  }
  return out;
}

FF poly_to_code(const Poly& a, uint32_t p) {
  FF code = 0;
  for (size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

}  // namespace

void Field::build_tables() {
  uint32_t p = spec_.p, q = spec_.q;
  auto mul_raw = [&](FF a, FF b) -> FF {
    if (spec_.f == 1) return (FF)((uint64_t)a * b % p);
    Poly c = poly_mul(code_to_poly(a, p), code_to_poly(b, p), p);
    return poly_to_code(poly_mod(std::move(c), spec_.modulus, p), p);
  };

  // Find a primitive element by direct order computation.
  FF prim = 0;
  for (FF cand = (spec_.f == 1 ? 2u : p); cand < q && !prim; ++cand) {
    uint64_t ord = 1;
    FF x = cand;
    while (x != 1) {
      x = mul_raw(x, cand);
      ++ord;
      if (ord > q) throw integrity_error("Field: order runaway");
    }
    if (ord == q - 1) prim = cand;
  }
  if (!prim && q == 2) prim = 1;
  if (!prim) {
    // Fall back to scanning from 1 (covers tiny prime fields like F_2, F_3).
    for (FF cand = 1; cand < q && !prim; ++cand) {
      uint64_t ord = 1;
      FF x = cand;
      while (x != 1) {
        x = mul_raw(x, cand);
        ++ord;
      }
      if (ord == q - 1) prim = cand;
    }
  }
  if (!prim) throw integrity_error("Field: no primitive element found");

  exp_.assign(2 * (q - 1), 0);
  log_.assign(q, 0);
  FF x = 1;
  for (uint32_t i = 0; i < q - 1; ++i) {
    exp_[i] = x;
    exp_[i + (q - 1)] = x;
    log_[x] = i;
    x = mul_raw(x, prim);
  }
  frob_.assign(q, 0);
  for (FF a = 0; a < q; ++a) {
    FF r = a;
    for (uint32_t i = 1; i < p; ++i) r = mul_raw(r, a);
    frob_[a] = r;
  }
}

FF Field::add(FF a, FF b) const {
  if (spec_.p == 2) return a ^ b;
  if (spec_.f == 1) return (a + b) % spec_.p;
  FF out = 0, mult = 1;
  for (uint32_t i = 0; i < spec_.f; ++i) {
    FF da = (a / mult) % spec_.p, db = (b / mult) % spec_.p;
    out += ((da + db) % spec_.p) * mult;
    mult *= spec_.p;
  }
  return out;
}

FF Field::neg(FF a) const {
  if (spec_.p == 2) return a;
  if (spec_.f == 1) return a == 0 ? 0 : spec_.p - a;
  FF out = 0, mult = 1;
  for (uint32_t i = 0; i < spec_.f; ++i) {
    FF d = (a / mult) % spec_.p;
    out += (d == 0 ? 0 : spec_.p - d) * mult;
    mult *= spec_.p;
  }
  return out;
}

FF Field::sub(FF a, FF b) const { return add(a, neg(b)); }

FF Field::inv(FF a) const {
  if (a == 0) throw argument_error("Field: division by zero");
  return exp_[(spec_.q - 1 - log_[a]) % (spec_.q - 1)];
}

FF Field::pow(FF a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[(uint64_t)log_[a] * (e % (spec_.q - 1)) % (spec_.q - 1)];
}

FF Field::frob_pow(FF a, uint32_t k) const {
  FF r = a;
  for (uint32_t i = 0; i < k % spec_.f; ++i) r = frob_[r];
  return r;
}

uint64_t Field::multiplicative_order(FF a) const {
  if (a == 0) throw argument_error("Field: order of zero");
  uint64_t n = spec_.q - 1, g = std::__gcd(n, (uint64_t)log_[a]);
  return a == 1 ? 1 : n / g;
}

std::optional<FF> Field::root_of(const std::vector<FF>& poly) const {
  for (FF z = 0; z < spec_.q; ++z) {
    FF acc = 0;
    for (size_t i = poly.size(); i-- > 0;) acc = add(mul(acc, z), poly[i] % spec_.p);
    if (acc == 0) return z;
  }
  return std::nullopt;
}

std::shared_ptr<const Field> Field::get(uint32_t p, uint32_t f) {
  static std::mutex mu;
  static std::unordered_map<uint64_t, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  uint64_t key = (uint64_t)p << 32 | f;
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto fld = std::make_shared<Field>(p, f);
  cache[key] = fld;
  return fld;
}

// ---------------------------------------------------------------------- Mat

Mat::Mat(FieldPtr field, uint32_t rows, uint32_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Mat Mat::identity(FieldPtr field, uint32_t n) {
  Mat m(std::move(field), n, n);
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& rhs) const {
  if (cols_ != rhs.rows_) throw argument_error("Mat: dimension mismatch in product");
  const Field& F = *field_;
  Mat out(field_, rows_, rhs.cols_);
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t k = 0; k < cols_; ++k) {
      FF v = at(i, k);
      if (!v) continue;
      for (uint32_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) = F.add(out.at(i, j), F.mul(v, rhs.at(k, j)));
    }
  return out;
}

Mat Mat::operator+(const Mat& rhs) const {
  Mat out(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], rhs.a_[i]);
  return out;
}

Mat Mat::transpose() const {
  Mat out(field_, cols_, rows_);
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw argument_error("Mat: inverse of non-square matrix");
  const Field& F = *field_;
  uint32_t n = rows_;
  Mat a = *this, inv = identity(field_, n);
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) throw argument_error("Mat: singular matrix");
    if (piv != col)
      for (uint32_t j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    FF s = F.inv(a.at(col, col));
    for (uint32_t j = 0; j < n; ++j) {
      a.at(col, j) = F.mul(a.at(col, j), s);
      inv.at(col, j) = F.mul(inv.at(col, j), s);
    }
    for (uint32_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      FF fct = a.at(i, col);
      for (uint32_t j = 0; j < n; ++j) {
        a.at(i, j) = F.sub(a.at(i, j), F.mul(fct, a.at(col, j)));
        inv.at(i, j) = F.sub(inv.at(i, j), F.mul(fct, inv.at(col, j)));
      }
    }
  }
  return inv;
}

Mat Mat::pow(uint64_t e) const {
  Mat r = identity(field_, rows_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FF Mat::det() const {
  const Field& F = *field_;
  Mat a = *this;
  uint32_t n = rows_;
  FF d = 1;
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t piv = col;
    while (piv < n && a.at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (uint32_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, a.at(col, col));
    FF s = F.inv(a.at(col, col));
    for (uint32_t i = col + 1; i < n; ++i) {
      if (a.at(i, col) == 0) continue;
      FF fct = F.mul(a.at(i, col), s);
      for (uint32_t j = col; j < n; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(fct, a.at(col, j)));
    }
  }
  return d;
}

Mat Mat::frobenius_map(uint32_t k) const {
  Mat out(field_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->frob_pow(a_[i], k);
  return out;
}

bool Mat::is_identity() const {
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::vector<FF> Mat::apply(const std::vector<FF>& row) const {
  const Field& F = *field_;
  std::vector<FF> out(cols_, 0);
  for (uint32_t i = 0; i < rows_; ++i) {
    FF v = row[i];
    if (!v) continue;
    for (uint32_t j = 0; j < cols_; ++j) out[j] = F.add(out[j], F.mul(v, at(i, j)));
  }
  return out;
}

uint32_t Mat::rank() const {
  const Field& F = *field_;
  Mat a = *this;
  uint32_t r = 0;
  for (uint32_t col = 0; col < cols_ && r < rows_; ++col) {
    uint32_t piv = r;
    while (piv < rows_ && a.at(piv, col) == 0) ++piv;
    if (piv == rows_) continue;
    for (uint32_t j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(r, j));
    FF s = F.inv(a.at(r, col));
    for (uint32_t j = 0; j < cols_; ++j) a.at(r, j) = F.mul(a.at(r, j), s);
    for (uint32_t i = 0; i < rows_; ++i) {
      if (i == r || a.at(i, col) == 0) continue;
      FF fct = a.at(i, col);
      for (uint32_t j = 0; j < cols_; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(fct, a.at(r, j)));
    }
    ++r;
  }
  return r;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (uint32_t i = 0; i < rows_; ++i) {
    for (uint32_t j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 == cols_ ? "" : " ");
    os << (i + 1 == rows_ ? "" : "; ");
  }
  return os.str();
}

std::vector<FF> vec_add(const Field& F, const std::vector<FF>& a, const std::vector<FF>& b) {
  std::vector<FF> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
  return out;
}

FF dot(const Field& F, const std::vector<FF>& a, const std::vector<FF>& b) {
  FF out = 0;
  for (size_t i = 0; i < a.size(); ++i) out = F.add(out, F.mul(a[i], b[i]));
  return out;
}

// --------------------------------------------------------------------- Form

FF Form::bilinear(const std::vector<FF>& u, const std::vector<FF>& v) const {
  const Field& F = *matrix.field();
  uint32_t n = matrix.rows();
  bool herm = kind == FormKind::hermitian;
  uint32_t bar = herm ? F.f() / 2 : 0;
  FF acc = 0;
  if (kind == FormKind::quadratic) {
    // polar form Q(u+v) - Q(u) - Q(v), i.e. Gram Q + Q^T
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        FF c = F.add(matrix.at(i, j), matrix.at(j, i));
        acc = F.add(acc, F.mul(F.mul(u[i], c), v[j]));
      }
    return acc;
  }
  for (uint32_t i = 0; i < n; ++i) {
    if (!u[i]) continue;
    for (uint32_t j = 0; j < n; ++j) {
      FF vj = herm ? F.frob_pow(v[j], bar) : v[j];
      acc = F.add(acc, F.mul(F.mul(u[i], matrix.at(i, j)), vj));
    }
  }
  return acc;
}

FF Form::quadratic(const std::vector<FF>& v) const {
  if (kind != FormKind::quadratic) throw argument_error("Form: quadratic value of bilinear form");
  const Field& F = *matrix.field();
  uint32_t n = matrix.rows();
  FF acc = 0;
  for (uint32_t i = 0; i < n; ++i) {
    if (!v[i]) continue;
    for (uint32_t j = 0; j < n; ++j)
      acc = F.add(acc, F.mul(F.mul(v[i], matrix.at(i, j)), v[j]));
  }
  return acc;
}

bool Form::preserved_by(const Mat& m, uint32_t frob) const {
  const Field& F = *matrix.field();
  uint32_t n = matrix.rows();
  std::vector<std::vector<FF>> rows(n);
  for (uint32_t i = 0; i < n; ++i) {
    rows[i].resize(n);
    for (uint32_t j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
  }
  std::vector<FF> ei(n, 0), ej(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    ei.assign(n, 0);
    ei[i] = 1;
    if (kind == FormKind::quadratic) {
      if (quadratic(rows[i]) != F.frob_pow(quadratic(ei), frob)) return false;
    }
    for (uint32_t j = 0; j < n; ++j) {
      ej.assign(n, 0);
      ej[j] = 1;
      if (bilinear(rows[i], rows[j]) != F.frob_pow(bilinear(ei, ej), frob)) return false;
    }
  }
  return true;
}

// ----------------------------------------------------------------- MatGroup

MatGroup MatGroup::conjugated(const Mat& r) const {
  Mat rinv = r.inverse();
  MatGroup out;
  out.field = field;
  out.dim = dim;
  for (const auto& g : gens) {
    SemilinearGen ng;
    ng.frob = g.frob;
    ng.dual = g.dual;
    // New coordinates v_new with v = v_new * r: matrix becomes
    // frob(r) * m * r^-1.
    ng.m = r.frobenius_map(g.frob) * g.m * rinv;
    out.gens.push_back(std::move(ng));
  }
  if (form) {
    Form nf = *form;
    if (form->kind == FormKind::hermitian) {
      uint32_t bar = field->f() / 2;
      nf.matrix = r * form->matrix * r.frobenius_map(bar).transpose();
    } else {
      nf.matrix = r * form->matrix * r.transpose();
    }
    out.form = std::move(nf);
  }
  return out;
}

// --------------------------------------------------------------- enumeration

namespace {

uint64_t vec_hash(const std::vector<FF>& v) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (FF x : v) {
    h ^= x + 0x9e3779b9ull;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<FF> normalize_projective(const Field& F, std::vector<FF> v) {
  for (FF c : v)
    if (c != 0) {
      if (c != 1) {
        FF s = F.inv(c);
        for (FF& x : v) x = F.mul(x, s);
      }
      break;
    }
  return v;
}

// All projective representatives (first nonzero coordinate 1) in lex order,
// v[0] most significant.
std::vector<std::vector<FF>> projective_reps(const Field& F, uint32_t dim) {
  std::vector<std::vector<FF>> out;
  std::vector<FF> v(dim, 0);
  // lex enumeration of all tuples; keep those normalized
  for (;;) {
    bool normalized = false, nonzero = false;
    for (uint32_t i = 0; i < dim; ++i) {
      if (v[i] != 0) {
        nonzero = true;
        normalized = v[i] == 1;
        break;
      }
    }
    if (nonzero && normalized) out.push_back(v);
    // increment
    uint32_t i = dim;
    while (i-- > 0) {
      if (++v[i] < F.q()) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    if (v == std::vector<FF>(dim, 0)) return out;
  }
}

}  // namespace

uint32_t MatAction::index_of(const Field& F, const std::vector<FF>& v) const {
  std::vector<FF> key = v;
  if (kind != Action::nonzero_vectors) key = normalize_projective(F, std::move(key));
  auto it = lookup.find(vec_hash(key));
  if (it != lookup.end())
    for (uint32_t idx : it->second)
      if (points[idx] == key) return idx;
  throw argument_error("MatAction: vector is not a point of this action");
}

MatAction permutation_image(const MatGroup& g, Action action, const Config& cfg) {
  const Field& F = *g.field;
  MatAction act;
  act.kind = action;

  auto push_point = [&](std::vector<FF> v) {
    act.lookup[vec_hash(v)].push_back((uint32_t)act.points.size());
    act.points.push_back(std::move(v));
  };

  switch (action) {
    case Action::projective_points: {
      for (auto& v : projective_reps(F, g.dim)) push_point(std::move(v));
      break;
    }
    case Action::nonzero_vectors: {
      uint64_t total = 1;
      for (uint32_t i = 0; i < g.dim; ++i) {
        total *= F.q();
        if (total > cfg.orbit_cap * 2) throw resource_error("orbit_cap", cfg.orbit_cap, "vector count");
      }
      std::vector<FF> v(g.dim, 0);
      for (uint64_t code = 1; code < total; ++code) {
        uint64_t c = code;
        for (uint32_t i = g.dim; i-- > 0;) {
          v[i] = (FF)(c % F.q());
          c /= F.q();
        }
        push_point(v);
      }
      break;
    }
    case Action::singular_points:
    case Action::nonsingular_points: {
      if (!g.form) throw argument_error("permutation_image: singular action needs a form");
      bool want_singular = action == Action::singular_points;
      for (auto& v : projective_reps(F, g.dim)) {
        FF val = g.form->kind == FormKind::quadratic ? g.form->quadratic(v)
                                                     : g.form->bilinear(v, v);
        if ((val == 0) == want_singular) push_point(std::move(v));
      }
      break;
    }
    case Action::antiflags: {
      auto reps = projective_reps(F, g.dim);
      for (uint32_t i = 0; i < reps.size(); ++i)
        for (uint32_t j = 0; j < reps.size(); ++j) {
          if (dot(F, reps[i], reps[j]) == 0) continue;
          std::vector<FF> pair = reps[i];
          pair.insert(pair.end(), reps[j].begin(), reps[j].end());
          push_point(std::move(pair));
        }
      break;
    }
  }

  act.degree = (uint32_t)act.points.size();
  if (act.degree > cfg.orbit_cap)
    throw resource_error("orbit_cap", cfg.orbit_cap, std::to_string(act.degree) + " points");

  auto locate = [&](const std::vector<FF>& v) -> uint32_t {
    auto it = act.lookup.find(vec_hash(v));
    if (it != act.lookup.end())
      for (uint32_t idx : it->second)
        if (act.points[idx] == v) return idx;
    throw integrity_error("permutation_image: image point not in the enumerated set");
  };

  std::vector<perm::Permutation> perm_gens;
  for (const auto& gen : g.gens) {
    if (gen.dual && action != Action::antiflags)
      throw argument_error("permutation_image: duality requires the antiflag action");
    Mat minv_t = gen.dual || action == Action::antiflags ? gen.m.inverse().transpose() : Mat();
    std::vector<perm::Point> img(act.degree);
    for (uint32_t idx = 0; idx < act.degree; ++idx) {
      const auto& pt = act.points[idx];
      std::vector<FF> out;
      if (action == Action::antiflags) {
        std::vector<FF> u(pt.begin(), pt.begin() + g.dim), w(pt.begin() + g.dim, pt.end());
        for (FF& x : u) x = F.frob_pow(x, gen.frob);
        for (FF& x : w) x = F.frob_pow(x, gen.frob);
        std::vector<FF> u2 = normalize_projective(F, gen.m.apply(u));
        std::vector<FF> w2 = normalize_projective(F, minv_t.apply(w));
        if (gen.dual) std::swap(u2, w2);
        out = std::move(u2);
        out.insert(out.end(), w2.begin(), w2.end());
      } else {
        std::vector<FF> v = pt;
        for (FF& x : v) x = F.frob_pow(x, gen.frob);
        out = gen.m.apply(v);
        if (action != Action::nonzero_vectors) out = normalize_projective(F, std::move(out));
      }
      img[idx] = locate(out);
    }
    perm_gens.emplace_back(std::move(img));
  }
  act.group = perm::PermGroup(act.degree, std::move(perm_gens));
  return act;
}

MatGroup adjoin_frobenius(const MatGroup& g) {
  if (g.field->f() == 1) throw argument_error("adjoin_frobenius: prime field has no Frobenius");
  MatGroup out = g;
  SemilinearGen fr;
  fr.m = Mat::identity(g.field, g.dim);
  fr.frob = 1;
  if (g.form && !g.form->preserved_by(fr.m, 1)) {
    throw argument_error("adjoin_frobenius: form is not Frobenius-stable");
  }
  out.gens.push_back(std::move(fr));
  return out;
}

MatGroup adjoin_duality(const MatGroup& g) {
  if (g.form) throw argument_error("adjoin_duality: only for linear groups without a form");
  MatGroup out = g;
  SemilinearGen du;
  du.m = Mat::identity(g.field, g.dim);
  du.dual = true;
  out.gens.push_back(std::move(du));
  return out;
}

// ------------------------------------------------------------ standard forms

Form standard_symplectic_form(FieldPtr F, uint32_t dim) {
  if (dim % 2) throw argument_error("symplectic form needs even dimension");
  uint32_t m = dim / 2;
  Mat b(F, dim, dim);
  for (uint32_t i = 0; i < m; ++i) {
    b.at(i, m + i) = 1;
    b.at(m + i, i) = F->neg(1);
  }
  return Form{FormKind::symplectic, std::move(b), 0};
}

Form standard_quadratic_form(FieldPtr F, uint32_t dim, int sign) {
  if (dim % 2) throw argument_error("even-dimensional quadratic forms only");
  uint32_t m = dim / 2;
  Mat qm(F, dim, dim);
  if (sign > 0) {
    for (uint32_t i = 0; i < m; ++i) qm.at(2 * i, 2 * i + 1) = 1;
  } else {
    for (uint32_t i = 0; i + 1 < m; ++i) qm.at(2 * i, 2 * i + 1) = 1;
    // anisotropic tail x^2 + xy + d y^2 with t^2 + t + d irreducible
    FF d = 0;
    bool found = false;
    for (d = 1; d < F->q() && !found; ++d) {
      bool has_root = false;
      for (FF t = 0; t < F->q() && !has_root; ++t)
        if (F->add(F->add(F->mul(t, t), t), d) == 0) has_root = true;
      if (!has_root) {
        found = true;
        break;
      }
    }
    if (!found) throw integrity_error("no anisotropic binary form found");
    qm.at(dim - 2, dim - 2) = 1;
    qm.at(dim - 2, dim - 1) = 1;
    qm.at(dim - 1, dim - 1) = d;
  }
  return Form{FormKind::quadratic, std::move(qm), sign};
}

Form standard_hermitian_form(FieldPtr F, uint32_t dim) {
  if (F->f() % 2) throw argument_error("hermitian form needs a quadratic extension field");
  return Form{FormKind::hermitian, Mat::identity(F, dim), 0};
}

// ------------------------------------------------- classical matrix groups

arith::Integer classical_image_order(arith::Family family, uint32_t dim, uint64_t q) {
  using arith::Family;
  // Certification acts on projective points; divide out scalars in the group.
  Integer full = [&] {
    switch (family) {
      case Family::GL: case Family::SL: case Family::Sp:
      case Family::GOPlus: case Family::GOMinus:
        return arith::classical_order(family, dim, q).order;
      case Family::SU:
        return arith::classical_order(Family::SU, dim, q).order;
      default:
        throw argument_error("classical_image_order: unsupported family");
    }
  }();
  Integer scalars = 1;
  switch (family) {
    case Family::GL: scalars = q - 1; break;
    case Family::SL: scalars = gcd(Integer(dim), Integer(q - 1)); break;
    case Family::Sp: scalars = gcd(Integer(2), Integer(q - 1)); break;
    case Family::SU: scalars = gcd(Integer(dim), Integer(q + 1)); break;
    case Family::GOPlus: case Family::GOMinus: scalars = gcd(Integer(2), Integer(q - 1)); break;
    default: break;
  }
  return full / scalars;
}

Action certification_action(arith::Family) { return Action::projective_points; }

namespace {

// Candidate generator streams per family; elements are appended until the
// certified image order is reached.
std::vector<Mat> candidate_stream(arith::Family family, FieldPtr F, uint32_t dim,
                                  const std::optional<Form>& form, size_t count) {
  using arith::Family;
  const Field& f = *F;
  std::vector<Mat> out;
  FF alpha = f.primitive();

  auto transvection = [&](const std::vector<FF>& v, FF lambda, const Form& frm) {
    // x -> x + lambda * B(x, v) * v
    Mat m = Mat::identity(F, dim);
    std::vector<FF> ei(dim, 0);
    for (uint32_t i = 0; i < dim; ++i) {
      ei.assign(dim, 0);
      ei[i] = 1;
      FF c = F->mul(lambda, frm.bilinear(ei, v));
      for (uint32_t j = 0; j < dim; ++j) m.at(i, j) = f.add(m.at(i, j), f.mul(c, v[j]));
    }
    return m;
  };

  switch (family) {
    case Family::GL:
    case Family::SL: {
      Mat t1 = Mat::identity(F, dim);
      if (dim >= 2) t1.at(0, 1) = 1;
      out.push_back(t1);
      if (f.q() > 2 && dim >= 2) {
        Mat t2 = Mat::identity(F, dim);
        t2.at(0, 1) = alpha;
        out.push_back(t2);
      }
      if (dim >= 2) {
        Mat c(F, dim, dim);
        for (uint32_t i = 0; i + 1 < dim; ++i) c.at(i, i + 1) = 1;
        c.at(dim - 1, 0) = (dim % 2 == 1) ? 1 : f.neg(1);  // det 1
        out.push_back(c);
        Mat l = Mat::identity(F, dim);
        l.at(1, 0) = 1;
        out.push_back(l);
        if (f.q() > 2) {
          Mat l2 = Mat::identity(F, dim);
          l2.at(1, 0) = alpha;
          out.push_back(l2);
        }
      }
      if (family == Family::GL && f.q() > 2) {
        Mat d = Mat::identity(F, dim);
        d.at(0, 0) = alpha;
        out.push_back(d);
      }
      break;
    }
    case Family::Sp:
    case Family::GOPlus:
    case Family::GOMinus: {
      const Form& frm = *form;
      bool orthogonal = family != Family::Sp;
      for (const auto& v : projective_reps(f, dim)) {
        if (out.size() >= count) break;
        if (orthogonal) {
          FF qv = frm.quadratic(v);
          if (qv == 0) continue;
          if (f.p() == 2) {
            // orthogonal transvection x -> x + (B(x,v)/Q(v)) v
            out.push_back(transvection(v, f.inv(qv), frm));
          } else {
            // reflection x -> x - (B(x,v)/Q(v)) v
            out.push_back(transvection(v, f.neg(f.inv(qv)), frm));
          }
        } else {
          out.push_back(transvection(v, 1, frm));
          if (f.q() > 2 && out.size() < count) out.push_back(transvection(v, alpha, frm));
        }
      }
      break;
    }
    case Family::SU: {
      // Unitary group of the identity Gram over GF(q0^2), q0 = p^(f/2).
      // Determinant-one isometries supported on a coordinate pair have the
      // shape [[a, b], [-bar(b), bar(a)]] with N(a) + N(b) = 1.
      uint32_t bar = f.f() / 2;
      auto block = [&](uint32_t r, uint32_t s, FF a, FF b) {
        Mat m = Mat::identity(F, dim);
        m.at(r, r) = a;
        m.at(r, s) = b;
        m.at(s, r) = f.neg(f.frob_pow(b, bar));
        m.at(s, s) = f.frob_pow(a, bar);
        return m;
      };
      auto norm1 = [&](FF a, FF b) {
        FF na = f.mul(a, f.frob_pow(a, bar)), nb = f.mul(b, f.frob_pow(b, bar));
        return f.add(na, nb) == 1;
      };
      uint32_t q0 = 1;
      for (uint32_t i = 0; i < bar; ++i) q0 *= f.p();
      FF lam = f.pow(alpha, q0 - 1);  // norm-one: N(lam) = lam^(q0+1)
      for (uint32_t r = 0; r < dim && out.size() < count; ++r)
        for (uint32_t s2 = r + 1; s2 < dim && out.size() < count; ++s2) {
          if (s2 > r + 1 && r > 0) continue;  // consecutive pairs plus (0, k)
          size_t taken = 0;
          for (FF a = 0; a < f.q() && taken < 8 && out.size() < count; ++a)
            for (FF b = 1; b < f.q() && taken < 8 && out.size() < count; ++b)
              if (norm1(a, b)) {
                out.push_back(block(r, s2, a, b));
                ++taken;
              }
          Mat m = Mat::identity(F, dim);
          m.at(r, r) = lam;
          m.at(s2, s2) = f.inv(lam);
          out.push_back(std::move(m));
        }
      break;
    }
    default:
      throw argument_error("classical_matrix_group: unsupported family " +
                           arith::family_name(family));
  }
  return out;
}

}  // namespace

MatGroup classical_matrix_group(arith::Family family, uint32_t dim, uint64_t q) {
  using arith::Family;
  auto pf = arith::prime_power(q);
  if (!pf) throw argument_error("classical_matrix_group: q must be a prime power");
  auto [p, f] = *pf;

  MatGroup g;
  g.dim = dim;
  switch (family) {
    case Family::GL:
    case Family::SL:
      g.field = Field::get((uint32_t)p, f);
      break;
    case Family::Sp:
      g.field = Field::get((uint32_t)p, f);
      g.form = standard_symplectic_form(g.field, dim);
      break;
    case Family::SU:
      g.field = Field::get((uint32_t)p, 2 * f);  // matrices over GF(q^2)
      g.form = standard_hermitian_form(g.field, dim);
      break;
    case Family::GOPlus:
    case Family::GOMinus:
      g.field = Field::get((uint32_t)p, f);
      g.form = standard_quadratic_form(g.field, dim, family == Family::GOPlus ? 1 : -1);
      break;
    default:
      throw argument_error("classical_matrix_group: family " + arith::family_name(family) +
                           " is built downstream (derived subgroup of GO)");
  }

  Integer target = classical_image_order(family, dim, q);
  size_t want = 8;
  for (int round = 0; round < 8; ++round, want = want * 2) {
    auto cand = candidate_stream(family, g.field, dim, g.form, want);
    g.gens.clear();
    for (auto& m : cand) {
      if (m.det() == 0) continue;
      if (family == Family::SL && m.det() != 1) continue;
      if (family == Family::SU && m.det() != 1) continue;
      if (g.form && !g.form->preserved_by(m, 0)) continue;
      SemilinearGen sg;
      sg.m = std::move(m);
      g.gens.push_back(std::move(sg));
    }
    if (g.gens.empty()) continue;
    MatAction act = permutation_image(g, certification_action(family));
    perm::StabilizerChain chain(act.degree, act.group.generators(), {}, true, &target,
                                /*allow_incomplete=*/true);
    if (chain.order() == target) return g;
  }
  throw integrity_error("classical_matrix_group: generator stream failed to reach order for " +
                        arith::family_name(family) + "_" + std::to_string(dim) + "(" +
                        std::to_string(q) + ")");
}

// ------------------------------------------------------------------- bases

Mat symplectic_standardization(const Mat& gram) {
  FieldPtr F = gram.field();
  const Field& f = *F;
  uint32_t n = gram.rows();
  if (n % 2) throw argument_error("symplectic_standardization: odd dimension");
  uint32_t m = n / 2;

  auto bval = [&](const std::vector<FF>& u, const std::vector<FF>& v) {
    FF acc = 0;
    for (uint32_t i = 0; i < n; ++i) {
      if (!u[i]) continue;
      for (uint32_t j = 0; j < n; ++j) acc = f.add(acc, f.mul(f.mul(u[i], gram.at(i, j)), v[j]));
    }
    return acc;
  };

  std::vector<std::vector<FF>> pool;
  for (uint32_t i = 0; i < n; ++i) {
    std::vector<FF> e(n, 0);
    e[i] = 1;
    pool.push_back(std::move(e));
  }
  std::vector<std::vector<FF>> es, fs;
  while (!pool.empty()) {
    std::vector<FF> u = pool.front();
    // find partner with nonzero pairing
    size_t wi = pool.size();
    for (size_t k = 1; k < pool.size(); ++k)
      if (bval(u, pool[k]) != 0) {
        wi = k;
        break;
      }
    if (wi == pool.size())
      throw argument_error("symplectic_standardization: degenerate form");
    std::vector<FF> w = pool[wi];
    FF s = f.inv(bval(u, w));
    for (FF& x : w) x = f.mul(x, s);  // B(u, w) = 1
    // project the rest of the pool off the hyperbolic plane <u, w>
    std::vector<std::vector<FF>> next;
    for (size_t k = 1; k < pool.size(); ++k) {
      if (k == wi) continue;
      std::vector<FF> x = pool[k];
      FF cu = bval(x, w), cw = bval(u, x);
      // x' = x - B(x,w)... choose so that B(x', u) = B(x', w) = 0
      for (uint32_t j = 0; j < n; ++j) {
        x[j] = f.sub(x[j], f.mul(cu, u[j]));
        x[j] = f.add(x[j], f.mul(f.neg(cw), w[j]));
      }
      // recompute carefully: B(x', u) = B(x,u) - cu*B(u,u) - cw*B(w,u)
      next.push_back(std::move(x));
    }
    es.push_back(std::move(u));
    fs.push_back(std::move(w));
    pool = std::move(next);
  }
  if (es.size() != m) throw integrity_error("symplectic_standardization: wrong plane count");
  Mat r(F, n, n);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      r.at(i, j) = es[i][j];
      r.at(m + i, j) = fs[i][j];
    }
  // Verify R * gram * R^T is the standard form.
  Mat check = r * gram * r.transpose();
  Form std_form = standard_symplectic_form(F, n);
  if (!(check == std_form.matrix))
    throw integrity_error("symplectic_standardization: normalization failed");
  return r;
}

std::vector<Mat> intertwiner_space(const std::vector<Mat>& as, const std::vector<Mat>& bs) {
  if (as.empty() || as.size() != bs.size())
    throw argument_error("intertwiner_space: need matching nonempty lists");
  FieldPtr F = as[0].field();
  const Field& f = *F;
  uint32_t n = as[0].rows();
  uint32_t nn = n * n;
  // Equations X * A = B * X for each pair, unknowns X_{ij} row-major.
  std::vector<std::vector<FF>> rows;
  for (size_t t = 0; t < as.size(); ++t) {
    const Mat& A = as[t];
    const Mat& B = bs[t];
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        std::vector<FF> row(nn, 0);
        for (uint32_t k = 0; k < n; ++k) {
          row[i * n + k] = f.add(row[i * n + k], A.at(k, j));
          row[k * n + j] = f.sub(row[k * n + j], B.at(i, k));
        }
        rows.push_back(std::move(row));
      }
  }
  // kernel of the stacked matrix
  uint32_t mrows = (uint32_t)rows.size();
  std::vector<int> pivot_col;
  uint32_t r = 0;
  for (uint32_t col = 0; col < nn && r < mrows; ++col) {
    uint32_t piv = r;
    while (piv < mrows && rows[piv][col] == 0) ++piv;
    if (piv == mrows) continue;
    std::swap(rows[piv], rows[r]);
    FF s = f.inv(rows[r][col]);
    for (uint32_t j = 0; j < nn; ++j) rows[r][j] = f.mul(rows[r][j], s);
    for (uint32_t i = 0; i < mrows; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      FF fct = rows[i][col];
      for (uint32_t j = 0; j < nn; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(fct, rows[r][j]));
    }
    pivot_col.push_back((int)col);
    ++r;
  }
  std::vector<bool> is_pivot(nn, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<Mat> basis;
  for (uint32_t free = 0; free < nn; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FF> x(nn, 0);
    x[free] = 1;
    for (uint32_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = f.neg(rows[i][free]);
    Mat m(F, n, n);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) m.at(i, j) = x[i * n + j];
    basis.push_back(std::move(m));
  }
  return basis;
}

// --------------------------------------------------------- scalar restriction

ScalarRestriction make_scalar_restriction(FieldPtr big, FieldPtr small_field) {
  const Field& B = *big;
  const Field& S = *small_field;
  if (B.p() != S.p() || B.f() % S.f() != 0)
    throw argument_error("restrict_scalars: not a subfield pair");
  ScalarRestriction sr;
  sr.big = big;
  sr.small = small_field;
  sr.s = B.f() / S.f();

  sr.power_basis.resize(sr.s);
  FF t = B.primitive();
  FF acc = 1;
  for (uint32_t i = 0; i < sr.s; ++i) {
    sr.power_basis[i] = acc;
    acc = B.mul(acc, t);
  }
  return sr;
}

namespace {

// F_p-linear coordinates machinery built lazily per restriction use.
struct RestrictionTables {
  ScalarRestriction sr;
  std::vector<FF> embed_table;                   // small code -> big code
  std::unordered_map<FF, FF> embed_inverse;      // big code -> small code
  std::vector<std::vector<FF>> coord_table;      // big code -> small coords
  explicit RestrictionTables(const ScalarRestriction& srx) : sr(srx) {
    const Field& B = *sr.big;
    const Field& S = *sr.small;
    uint32_t p = B.p();
    // subfield embedding: root of the small modulus (or of x - x0 for f = 1)
    FF root;
    if (S.f() == 1) {
      root = 1;  // prime subfield embeds by repeated addition of 1
    } else {
      std::vector<FF> smallmod(S.spec().modulus.begin(), S.spec().modulus.end());
      // choose the root generating the same Frobenius orbit deterministically
      std::optional<FF> r0 = B.root_of(smallmod);
      if (!r0) throw integrity_error("restrict_scalars: small modulus has no root upstairs");
      root = *r0;
    }
    embed_table.resize(S.q());
    for (FF c = 0; c < S.q(); ++c) {
      // evaluate the digit polynomial of c at the root
      FF val = 0, power = 1;
      FF cc = c;
      for (uint32_t d = 0; d < S.f(); ++d) {
        FF digit = cc % p;
        cc /= p;
        FF term = 0;
        for (FF k = 0; k < digit; ++k) term = B.add(term, power);
        val = B.add(val, term);
        power = B.mul(power, root);
      }
      embed_table[c] = val;
      embed_inverse[val] = c;
    }
    // coordinates: invert the F_p-linear map (c_0..c_{s-1}) -> sum emb(c_i) t^i
    uint32_t fb = B.f(), fs = S.f(), s = sr.s;
    // basis over F_p of the domain: unit digit vectors
    // build matrix over F_p: columns indexed by (i, d), rows = big digits
    uint32_t dimension = fb;
    std::vector<std::vector<uint32_t>> M(dimension, std::vector<uint32_t>(dimension, 0));
    for (uint32_t i = 0; i < s; ++i)
      for (uint32_t d = 0; d < fs; ++d) {
        FF small_unit = 1;
        for (uint32_t k = 0; k < d; ++k) small_unit *= p;
        FF big_val = B.mul(embed_table[small_unit], sr.power_basis[i]);
        for (uint32_t row = 0; row < dimension; ++row) {
          M[row][i * fs + d] = big_val % p;
          big_val /= p;
        }
      }
    // invert M over F_p
    std::vector<std::vector<uint32_t>> inv(dimension, std::vector<uint32_t>(dimension, 0));
    for (uint32_t i = 0; i < dimension; ++i) inv[i][i] = 1;
    for (uint32_t col = 0; col < dimension; ++col) {
      uint32_t piv = col;
      while (piv < dimension && M[piv][col] == 0) ++piv;
      if (piv == dimension) throw integrity_error("restrict_scalars: coordinate map singular");
      std::swap(M[piv], M[col]);
      std::swap(inv[piv], inv[col]);
      uint32_t sc = 1;
      // modular inverse of M[col][col] mod p
      for (uint32_t k = 1; k < p; ++k)
        if (M[col][col] * k % p == 1) sc = k;
      for (uint32_t j = 0; j < dimension; ++j) {
        M[col][j] = M[col][j] * sc % p;
        inv[col][j] = inv[col][j] * sc % p;
      }
      for (uint32_t i2 = 0; i2 < dimension; ++i2) {
        if (i2 == col || M[i2][col] == 0) continue;
        uint32_t fct = M[i2][col];
        for (uint32_t j = 0; j < dimension; ++j) {
          M[i2][j] = (M[i2][j] + (p - fct) * M[col][j]) % p;
          inv[i2][j] = (inv[i2][j] + (p - fct) * inv[col][j]) % p;
        }
      }
    }
    coord_table.resize(B.q());
    for (FF x = 0; x < B.q(); ++x) {
      std::vector<uint32_t> digits(dimension, 0);
      FF xx = x;
      for (uint32_t d = 0; d < dimension; ++d) {
        digits[d] = xx % p;
        xx /= p;
      }
      std::vector<uint32_t> sol(dimension, 0);
      for (uint32_t i = 0; i < dimension; ++i)
        for (uint32_t j = 0; j < dimension; ++j)
          sol[i] = (sol[i] + inv[i][j] * digits[j]) % p;
      std::vector<FF> coords(s, 0);
      for (uint32_t i = 0; i < s; ++i) {
        FF code = 0, mult = 1;
        for (uint32_t d = 0; d < fs; ++d) {
          code += sol[i * fs + d] * mult;
          mult *= p;
        }
        coords[i] = code;
      }
      coord_table[x] = std::move(coords);
    }
  }
};

const RestrictionTables& tables_for(const ScalarRestriction& sr) {
  static std::mutex mu;
  static std::unordered_map<uint64_t, std::unique_ptr<RestrictionTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  uint64_t key = ((uint64_t)sr.big->q() << 32) | sr.small->q();
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RestrictionTables>(sr)).first;
  return *it->second;
}

}  // namespace

std::vector<FF> ScalarRestriction::coords(FF big_elt) const {
  return tables_for(*this).coord_table[big_elt];
}

FF ScalarRestriction::lift(const std::vector<FF>& c) const {
  const auto& tb = tables_for(*this);
  FF acc = 0;
  for (uint32_t i = 0; i < s; ++i)
    acc = big->add(acc, big->mul(tb.embed_table[c[i]], power_basis[i]));
  return acc;
}

FF ScalarRestriction::embed(FF small_elt) const { return tables_for(*this).embed_table[small_elt]; }

FF ScalarRestriction::trace(FF big_elt) const {
  const auto& tb = tables_for(*this);
  const Field& B = *big;
  uint32_t step = small->f();
  FF acc = 0, x = big_elt;
  for (uint32_t i = 0; i < s; ++i) {
    acc = B.add(acc, x);
    x = B.frob_pow(x, step);
  }
  auto it = tb.embed_inverse.find(acc);
  if (it == tb.embed_inverse.end())
    throw integrity_error("restrict_scalars: trace fell outside the subfield");
  return it->second;
}

MatGroup restrict_scalars(const MatGroup& bigg, FieldPtr small_field) {
  ScalarRestriction sr = make_scalar_restriction(bigg.field, small_field);
  const Field& B = *bigg.field;
  uint32_t n = bigg.dim, s = sr.s, N = n * s;

  auto mult_matrix = [&](FF a) {
    // s x s small matrix of multiplication by a on the power basis
    Mat m(small_field, s, s);
    for (uint32_t i = 0; i < s; ++i) {
      auto c = sr.coords(B.mul(sr.power_basis[i], a));
      for (uint32_t j = 0; j < s; ++j) m.at(i, j) = c[j];
    }
    return m;
  };

  MatGroup out;
  out.field = small_field;
  out.dim = N;
  for (const auto& g : bigg.gens) {
    if (g.dual) throw argument_error("restrict_scalars: duality generators unsupported");
    SemilinearGen ng;
    if (g.frob == 0) {
      Mat m(small_field, N, N);
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
          if (g.m.at(i, j) == 0) continue;
          Mat blk = mult_matrix(g.m.at(i, j));
          for (uint32_t a = 0; a < s; ++a)
            for (uint32_t b = 0; b < s; ++b) m.at(i * s + a, j * s + b) = blk.at(a, b);
        }
      ng.m = std::move(m);
      ng.frob = 0;
    } else {
      // Semilinear x -> x^(p^t) * M.  For x_i = sum_a emb(c_ia) t^a the image
      // block j is sum_{i,a} emb(c_ia^(p^t)) * (sigma(t^a) M_ij), which is
      // small-linear in the twisted coefficients.  So the small generator is
      // (rows = coords(sigma(t^a) M_ij), frob = t mod f_small).
      Mat m(small_field, N, N);
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t a = 0; a < s; ++a) {
          FF sig_ta = B.frob_pow(sr.power_basis[a], g.frob);
          for (uint32_t j = 0; j < n; ++j) {
            auto c = sr.coords(B.mul(sig_ta, g.m.at(i, j)));
            for (uint32_t b = 0; b < s; ++b) m.at(i * s + a, j * s + b) = c[b];
          }
        }
      ng.m = std::move(m);
      ng.frob = g.frob % small_field->f();
    }
    out.gens.push_back(std::move(ng));
  }

  if (bigg.form && bigg.form->kind == FormKind::symplectic) {
    Mat gram(small_field, N, N);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t a = 0; a < s; ++a)
        for (uint32_t j = 0; j < n; ++j)
          for (uint32_t b = 0; b < s; ++b) {
            FF big_val = B.mul(B.mul(sr.power_basis[a], sr.power_basis[b]),
                               bigg.form->matrix.at(i, j));
            gram.at(i * s + a, j * s + b) = sr.trace(big_val);
          }
    out.form = Form{FormKind::symplectic, std::move(gram), 0};
  }
  return out;
}

}  // namespace facta::matgrp
