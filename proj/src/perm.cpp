#include "facta/perm.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace facta::perm {

namespace {

uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t hash_points(const std::vector<Point>& v) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (Point p : v) {
    h ^= p + 0x9e3779b9ull;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(uint32_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p])
      throw argument_error("Permutation: images do not form a bijection");
    seen[p] = true;
  }
}

bool Permutation::is_identity() const {
  for (Point i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw argument_error("Permutation product: degree mismatch");
  Permutation out;
  out.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) out.img_[i] = rhs.img_[img_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.img_.resize(img_.size());
  for (Point i = 0; i < img_.size(); ++i) out.img_[img_[i]] = i;
  return out;
}

Permutation Permutation::conjugate_by(const Permutation& g) const {
  return g.inverse() * (*this) * g;
}

uint64_t Permutation::order() const {
  uint64_t ord = 1;
  std::vector<bool> seen(img_.size(), false);
  for (Point i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    uint64_t len = 0;
    for (Point j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::vector<uint32_t> Permutation::cycle_type() const {
  std::vector<uint32_t> lens;
  std::vector<bool> seen(img_.size(), false);
  for (Point i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    uint32_t len = 0;
    for (Point j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

uint64_t Permutation::hash() const { return hash_points(img_); }

bool Permutation::is_even() const {
  bool even = true;
  std::vector<bool> seen(img_.size(), false);
  for (Point i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    uint32_t len = 0;
    for (Point j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) even = !even;
  }
  return even;
}

Permutation Permutation::parse_cycles(uint32_t degree, std::string_view text) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), 0);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw argument_error("cycle parse: expected '('");
    ++i;
    std::vector<Point> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!isdigit((unsigned char)text[i])) throw argument_error("cycle parse: expected digit");
      uint64_t v = 0;
      while (i < text.size() && isdigit((unsigned char)text[i])) v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > degree) throw argument_error("cycle parse: point out of range");
      cyc.push_back((Point)(v - 1));
      skip_ws();
    }
    if (i == text.size()) throw argument_error("cycle parse: unterminated cycle");
    ++i;  // ')'
    if (cyc.size() > 1) {
      for (size_t k = 0; k < cyc.size(); ++k) {
        Point from = cyc[k], to = cyc[(k + 1) % cyc.size()];
        if (img[from] != from) throw argument_error("cycle parse: point repeated");
        img[from] = to;
      }
    }
    skip_ws();
  }
  return Permutation(std::move(img));
}

std::string Permutation::cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (Point i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = true;
      continue;
    }
    os << '(';
    bool first = true;
    for (Point j = i; !seen[j]; j = img_[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << (j + 1);
      first = false;
    }
    os << ')';
    any = true;
  }
  if (!any) os << "()";
  return os.str();
}

// ---------------------------------------------------------------- ChainLevel

Permutation ChainLevel::transversal(Point p) const {
  if (!in_orbit(p)) throw argument_error("transversal: point not in orbit");
  std::vector<int32_t> edges;
  for (Point q = p; q != base_point; q = parent[q]) edges.push_back(parent_gen[q]);
  Permutation u((uint32_t)orbit_pos.size());
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) u = u * gens[*it];
  return u;
}

Permutation ChainLevel::mult_inv_transversal(const Permutation& x, Point p) const {
  if (explicit_transversal) return x * inv_transversal[orbit_pos[p]];
  Permutation y = x;
  Point q = p;
  while (q != base_point) {
    int32_t e = parent_gen[q];
    y = y * inv_gens[e];
    q = parent[q];
  }
  return y;
}

// ------------------------------------------------------------ StabilizerChain

StabilizerChain::StabilizerChain(uint32_t degree, const std::vector<Permutation>& gens,
                                 std::span<const Point> base_hint, bool randomized_seed,
                                 const Integer* known_order, bool allow_incomplete)
    : degree_(degree), base_hint_(base_hint.begin(), base_hint.end()) {
  explicit_budget_left_ = Config::standard().coset_memory_budget / 2;

  for (Point b : base_hint_) {
    if (b >= degree_) throw argument_error("StabilizerChain: base point out of range");
    new_level(b);
  }

  std::vector<Permutation> start;
  for (const auto& g : gens) {
    if (g.degree() != degree_) throw argument_error("StabilizerChain: generator degree mismatch");
    if (!g.is_identity()) start.push_back(g);
  }
  if (start.empty()) return;

  if (levels_.empty()) {
    Point b = 0;
    while (start[0][b] == b) ++b;
    new_level(b);
  }
  for (const auto& g : start) add_generator(0, g);

  if (randomized_seed) {
    // Probabilistic fill; either the known order or the deterministic closure
    // below certifies the result.
    uint64_t state = 0x5defacedULL ^ ((uint64_t)degree_ * 1000003u) ^ (start.size() << 32);
    std::vector<Permutation> pool = start;
    while (pool.size() < 6) pool.push_back(pool[pool.size() % start.size()]);
    int quiet = 0, iterations = 0;
    int max_iterations = 3000 + 200 * (int)degree_ / 10;
    while (quiet < 16 && iterations < max_iterations) {
      ++iterations;
      if (known_order && order() == *known_order) return;  // provably complete
      size_t i = splitmix64(state) % pool.size(), j = splitmix64(state) % pool.size();
      if (i == j) continue;
      pool[i] = (splitmix64(state) & 1) ? pool[i] * pool[j] : pool[j] * pool[i];
      auto [h, lvl] = sift(pool[i]);
      if (h.is_identity()) {
        ++quiet;
        continue;
      }
      quiet = 0;
      insert_residue(h, lvl);
    }
    if (known_order && order() == *known_order) return;
  }
  if (allow_incomplete) return;

  // Certifying pass: full Schreier closure, bottom level first.
  for (size_t i = levels_.size(); i-- > 0;) schreier_sims(i);
}

void StabilizerChain::new_level(Point base) {
  ChainLevel lvl;
  lvl.base_point = base;
  lvl.orbit_pos.assign(degree_, -1);
  lvl.parent.assign(degree_, 0);
  lvl.parent_gen.assign(degree_, -1);
  lvl.orbit.push_back(base);
  lvl.orbit_pos[base] = 0;
  lvl.parent_gen[base] = -1;
  // Explicit inverse transversals are kept while the memory budget lasts;
  // the Schreier tree only ever grows, so entries stay valid.
  lvl.explicit_transversal = explicit_budget_left_ > (size_t)degree_ * sizeof(Point) * 8;
  if (lvl.explicit_transversal) {
    lvl.inv_transversal.emplace_back(degree_);
    explicit_budget_left_ -= (size_t)degree_ * sizeof(Point);
  }
  levels_.push_back(std::move(lvl));
}

void StabilizerChain::add_orbit_point(size_t li, Point q, Point from, int32_t gi) {
  ChainLevel& lvl = levels_[li];
  lvl.orbit_pos[q] = (int32_t)lvl.orbit.size();
  lvl.orbit.push_back(q);
  lvl.parent[q] = from;
  lvl.parent_gen[q] = gi;
  if (lvl.explicit_transversal) {
    size_t bytes = (size_t)degree_ * sizeof(Point);
    if (explicit_budget_left_ < bytes) {
      lvl.explicit_transversal = false;
      lvl.inv_transversal.clear();
      lvl.inv_transversal.shrink_to_fit();
    } else {
      explicit_budget_left_ -= bytes;
      // u_q^-1 = g^-1 * u_from^-1
      lvl.inv_transversal.push_back(lvl.inv_gens[gi] * lvl.inv_transversal[lvl.orbit_pos[from]]);
    }
  }
}

void StabilizerChain::extend_orbit(size_t li) {
  ChainLevel& lvl = levels_[li];
  while (lvl.pending < lvl.orbit.size()) {
    Point p = lvl.orbit[lvl.pending++];
    for (size_t gi = 0; gi < lvl.gens.size(); ++gi) {
      Point q = lvl.gens[gi][p];
      if (lvl.orbit_pos[q] < 0) add_orbit_point(li, q, p, (int32_t)gi);
    }
  }
}

void StabilizerChain::add_generator(size_t li, const Permutation& g) {
  ChainLevel& lvl = levels_[li];
  lvl.gens.push_back(g);
  lvl.inv_gens.push_back(g.inverse());
  // Sweep the whole current orbit with the new generator, then finish the BFS.
  size_t old = lvl.orbit.size();
  for (size_t qi = 0; qi < old; ++qi) {
    Point q = lvl.gens.back()[lvl.orbit[qi]];
    if (lvl.orbit_pos[q] < 0) add_orbit_point(li, q, lvl.orbit[qi], (int32_t)(lvl.gens.size() - 1));
  }
  extend_orbit(li);
}

// h fixes base[0..stuck), so it is a valid strong generator for levels
// 1..stuck; level 0 keeps the original generators, which already generate
// the whole group.
void StabilizerChain::insert_residue(const Permutation& h, size_t stuck) {
  if (stuck == levels_.size()) {
    if (levels_.size() >= degree_)
      throw integrity_error("StabilizerChain: base exhausted with nontrivial residue");
    Point b = 0;
    while (h[b] == b) ++b;
    new_level(b);
    stuck = levels_.size() - 1;
  }
  for (size_t l = 1; l <= stuck; ++l) add_generator(l, h);
  if (stuck == 0) add_generator(0, h);
}

std::pair<Permutation, size_t> StabilizerChain::sift(const Permutation& g) const {
  Permutation h = g;
  for (size_t i = 0; i < levels_.size(); ++i) {
    const ChainLevel& lvl = levels_[i];
    Point p = h[lvl.base_point];
    if (p == lvl.base_point) continue;
    if (!lvl.in_orbit(p)) return {std::move(h), i};
    h = lvl.mult_inv_transversal(h, p);
  }
  return {std::move(h), levels_.size()};
}

void StabilizerChain::schreier_sims(size_t li) {
  extend_orbit(li);
  for (size_t qi = 0; qi < levels_[li].orbit.size(); ++qi) {
    Point p = levels_[li].orbit[qi];
    Permutation up = levels_[li].transversal(p);
    for (size_t gi = 0; gi < levels_[li].gens.size(); ++gi) {
      Permutation s = levels_[li].gens[gi];
      Point ps = s[p];
      Permutation sg = levels_[li].mult_inv_transversal(up * s, ps);
      if (sg.is_identity()) continue;

      // Sift the Schreier generator from the next level down.
      Permutation h = std::move(sg);
      size_t stuck = levels_.size();
      for (size_t j = li + 1; j < levels_.size(); ++j) {
        Point t = h[levels_[j].base_point];
        if (t == levels_[j].base_point) continue;
        if (!levels_[j].in_orbit(t)) {
          stuck = j;
          break;
        }
        h = levels_[j].mult_inv_transversal(h, t);
      }
      if (h.is_identity()) continue;

      if (stuck == levels_.size()) {
        if (levels_.size() >= degree_)
          throw integrity_error("schreier_sims: base exhausted with nontrivial residue");
        Point b = 0;
        while (h[b] == b) ++b;
        new_level(b);
        stuck = levels_.size() - 1;
      }
      for (size_t l = li + 1; l <= stuck; ++l) add_generator(l, h);
      for (size_t l = stuck + 1; l-- > li + 1;) schreier_sims(l);
      // Level li's own orbit and tree were untouched; continue the closure.
    }
  }
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lvl : levels_) b.push_back(lvl.base_point);
  return b;
}

Integer StabilizerChain::order() const {
  Integer o = 1;
  for (const auto& lvl : levels_) o *= (uint64_t)lvl.orbit.size();
  return o;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [h, lvl] = sift(g);
  (void)lvl;
  return h.is_identity();
}

std::vector<Permutation> StabilizerChain::level_generators(size_t k) const {
  if (k >= levels_.size()) return {};
  return levels_[k].gens;
}

// ------------------------------------------------------------------ PermGroup

PermGroup::PermGroup(uint32_t degree, std::vector<Permutation> gens) : degree_(degree) {
  for (auto& g : gens) {
    if (g.degree() != degree) throw argument_error("PermGroup: generator degree mismatch");
    if (!g.is_identity()) gens_.push_back(std::move(g));
  }
}

bool PermGroup::has_chain() const { return box_->chain != nullptr; }

const StabilizerChain& PermGroup::chain() const {
  std::call_once(box_->once, [&] {
    box_->chain = std::make_unique<StabilizerChain>(
        degree_, gens_, std::span<const Point>{}, true,
        expected_ ? &*expected_ : nullptr);
  });
  return *box_->chain;
}

PermGroup PermGroup::with_base(std::span<const Point> base_prefix) const {
  PermGroup g(degree_, gens_);
  g.expected_ = expected_;
  std::call_once(g.box_->once, [&] {
    g.box_->chain = std::make_unique<StabilizerChain>(degree_, gens_, base_prefix, true,
                                                      g.expected_ ? &*g.expected_ : nullptr);
  });
  return g;
}

void PermGroup::expect_order(Integer known) {
  if (has_chain()) {
    if (box_->chain->order() != known)
      throw integrity_error("expect_order: chain already built with different order");
    return;
  }
  expected_ = std::move(known);
}

bool PermGroup::is_trivial() const { return gens_.empty(); }

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  if (g.is_identity()) return true;
  if (gens_.empty()) return false;
  return chain().contains(g);
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
  for (const auto& x : gens_)
    if (!g.contains(x)) return false;
  return true;
}

bool PermGroup::same_group_as(const PermGroup& g) const {
  return degree_ == g.degree_ && is_subgroup_of(g) && g.is_subgroup_of(*this);
}

std::vector<Point> PermGroup::orbit_of(Point p) const {
  return orbit_of_point(degree_, gens_, p);
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::vector<Point>> res;
  std::vector<bool> seen(degree_, false);
  for (Point p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    auto orb = orbit_of(p);
    for (Point q : orb) seen[q] = true;
    std::sort(orb.begin(), orb.end());
    res.push_back(std::move(orb));
  }
  return res;
}

bool PermGroup::is_transitive() const {
  if (degree_ <= 1) return true;
  return orbit_of(0).size() == degree_;
}

PermGroup PermGroup::stabilizer(std::span<const Point> pts) const {
  PermGroup rebased = with_base(pts);
  auto gens = rebased.chain().level_generators(pts.size());
  return PermGroup(degree_, std::move(gens));
}

PermGroup PermGroup::stabilizer(Point p) const {
  std::vector<Point> pts{p};
  return stabilizer(std::span<const Point>(pts));
}

Permutation PermGroup::random_element(uint64_t& rng_state) const {
  const StabilizerChain& c = chain();
  Permutation g(degree_);
  for (const auto& lvl : c.levels()) {
    Point p = lvl.orbit[splitmix64(rng_state) % lvl.orbit.size()];
    g = lvl.transversal(p) * g;
  }
  return g;
}

std::vector<Permutation> PermGroup::elements(uint64_t cap) const {
  Integer n = order();
  if (n > cap) throw resource_error("element_enumeration_cap", cap, n.str() + " elements");
  std::vector<Permutation> out;
  out.reserve(n.convert_to<size_t>());
  const auto& lvls = chain().levels();
  // Every element factors uniquely as u^(m-1) * ... * u^(0) over the levels,
  // deepest transversal applied first.
  std::function<void(size_t, const Permutation&)> rec = [&](size_t i, const Permutation& acc) {
    if (i == lvls.size()) {
      out.push_back(acc);
      return;
    }
    size_t level = lvls.size() - 1 - i;
    for (Point p : lvls[level].orbit) rec(i + 1, acc * lvls[level].transversal(p));
  };
  rec(0, Permutation(degree_));
  return out;
}

PermGroup PermGroup::conjugate_by(const Permutation& g) const {
  std::vector<Permutation> gens;
  Permutation gi = g.inverse();
  for (const auto& x : gens_) gens.push_back(gi * x * g);
  return PermGroup(degree_, std::move(gens));
}

// --------------------------------------------------------------- free helpers

std::vector<Point> orbit_of_point(uint32_t degree, const std::vector<Permutation>& gens,
                                  Point p) {
  std::vector<Point> orb{p};
  std::vector<bool> seen(degree, false);
  seen[p] = true;
  for (size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : gens) {
      Point q = g[orb[i]];
      if (!seen[q]) {
        seen[q] = true;
        orb.push_back(q);
      }
    }
  return orb;
}

Permutation random_word(const std::vector<Permutation>& gens, uint32_t degree, uint64_t& state,
                        int length) {
  Permutation g(degree);
  for (int i = 0; i < length; ++i) g = g * gens[splitmix64(state) % gens.size()];
  return g;
}

Permutation evaluate_word(const PermGroup& g, std::string_view word) {
  const auto& gens = g.generators();
  Permutation acc(g.degree());
  size_t i = 0;
  auto apply_index = [&](long idx) {
    bool inv = idx < 0;
    size_t k = (size_t)(inv ? -idx : idx) - 1;
    if (k >= gens.size()) throw argument_error("word: generator index out of range");
    acc = acc * (inv ? gens[k].inverse() : gens[k]);
  };
  while (i < word.size()) {
    char c = word[i];
    if (c == ' ' || c == '*' || c == ',') {
      ++i;
    } else if (c >= 'a' && c <= 'z') {
      apply_index(c - 'a' + 1);
      ++i;
    } else if (c >= 'A' && c <= 'Z') {
      apply_index(-(c - 'A' + 1));
      ++i;
    } else if (c == '#') {
      ++i;
      bool neg = i < word.size() && word[i] == '-';
      if (neg) ++i;
      long v = 0;
      while (i < word.size() && isdigit((unsigned char)word[i])) v = v * 10 + (word[i++] - '0');
      if (v == 0) throw argument_error("word: bad numeric generator");
      apply_index(neg ? -v : v);
    } else {
      throw argument_error(std::string("word: unexpected character '") + c + "'");
    }
  }
  return acc;
}

// ----------------------------------------------------------------- CosetTable

CosetTable::CosetTable(const PermGroup& G, const PermGroup& H, const Config& cfg)
    : h_group_(H) {
  if (H.degree() != G.degree()) throw argument_error("coset_action: degree mismatch");
  if (!H.is_subgroup_of(G)) throw containment_error("coset_action: H is not contained in G");

  h_chain_ = &h_group_.chain();
  Integer index = G.order() / H.order();
  if (index > cfg.coset_index_cap)
    throw resource_error("coset_index_cap", cfg.coset_index_cap, "index " + index.str());
  uint64_t n = index.convert_to<uint64_t>();
  uint64_t bytes = n * (uint64_t)G.degree() * sizeof(Point);
  if (bytes > cfg.coset_memory_budget)
    throw resource_error("coset_memory_budget", cfg.coset_memory_budget,
                         std::to_string(bytes) + " bytes of representatives");

  reps_.reserve(n);
  auto push = [&](Permutation rep) -> uint64_t {
    uint64_t h = rep.hash();
    auto& bucket = lookup_[h];
    for (uint64_t idx : bucket)
      if (reps_[idx] == rep) return idx;
    uint64_t idx = reps_.size();
    reps_.push_back(std::move(rep));
    bucket.push_back(idx);
    return idx;
  };

  push(canonical(Permutation(G.degree())));
  size_t ngens = G.generators().size();
  std::vector<std::vector<Point>> imgs(ngens);
  for (auto& v : imgs) v.resize(n);
  for (uint64_t i = 0; i < reps_.size(); ++i) {
    for (size_t gi = 0; gi < ngens; ++gi) {
      uint64_t j = push(canonical(reps_[i] * G.generators()[gi]));
      if (j >= n) throw integrity_error("coset_action: more cosets than the index");
      imgs[gi][i] = (Point)j;
    }
  }
  if (reps_.size() != n)
    throw integrity_error("coset_action: coset count " + std::to_string(reps_.size()) +
                          " != index " + index.str());

  std::vector<Permutation> image_gens;
  for (auto& v : imgs) image_gens.emplace_back(std::move(v));
  image_ = PermGroup((uint32_t)n, std::move(image_gens));
}

Permutation CosetTable::canonical(const Permutation& x) const {
  Permutation y = x;
  for (const auto& lvl : h_chain_->levels()) {
    Point best = lvl.orbit[0];
    Point best_img = y[best];
    for (Point t : lvl.orbit) {
      if (y[t] < best_img) {
        best = t;
        best_img = y[t];
      }
    }
    for (Point q = best; q != lvl.base_point;) {
      int32_t e = lvl.parent_gen[q];
      y = lvl.gens[e] * y;
      q = lvl.parent[q];
    }
  }
  return y;
}

uint64_t CosetTable::point_of(const Permutation& x) const {
  Permutation c = canonical(x);
  auto it = lookup_.find(c.hash());
  if (it != lookup_.end())
    for (uint64_t idx : it->second)
      if (reps_[idx] == c) return idx;
  throw argument_error("coset point_of: element not in the enumerated group");
}

Permutation CosetTable::permutation_image_of(const Permutation& g) const {
  std::vector<Point> img(reps_.size());
  for (uint64_t i = 0; i < reps_.size(); ++i) img[i] = (Point)point_of(reps_[i] * g);
  return Permutation(std::move(img));
}

CosetActionResult coset_action(const PermGroup& G, const PermGroup& H, const Config& cfg) {
  CosetActionResult r;
  r.table = std::make_shared<CosetTable>(G, H, cfg);
  r.image = r.table->image();
  r.index = r.table->index();
  return r;
}

PermGroup homomorphism_kernel(const PermGroup& G, const std::vector<Permutation>& images,
                              uint32_t image_degree) {
  if (images.size() != G.generators().size())
    throw argument_error("homomorphism_kernel: one image per generator required");
  uint32_t n = G.degree(), m = image_degree;

  // Elements with trivial image are exactly those fixing a base of the image
  // group pointwise, so a short forced base on the combined action suffices.
  PermGroup image_grp(m, images);
  std::vector<Point> img_base = image_grp.chain().base();

  std::vector<Permutation> combined;
  for (size_t i = 0; i < images.size(); ++i) {
    std::vector<Point> v(m + n);
    for (Point p = 0; p < m; ++p) v[p] = images[i][p];
    for (Point p = 0; p < n; ++p) v[m + p] = m + G.generators()[i][p];
    combined.emplace_back(std::move(v));
  }
  PermGroup big(m + n, std::move(combined));
  PermGroup ker_big = big.stabilizer(std::span<const Point>(img_base));
  std::vector<Permutation> ker_gens;
  for (const auto& g : ker_big.generators()) {
    std::vector<Point> v(n);
    for (Point p = 0; p < n; ++p) v[p] = g[m + p] - m;
    ker_gens.emplace_back(std::move(v));
  }
  return PermGroup(n, std::move(ker_gens));
}

// ------------------------------------------------------------------ structure

PermGroup normal_closure(const PermGroup& G, const std::vector<Permutation>& seeds) {
  std::vector<Permutation> gens;
  std::deque<Permutation> queue;
  PermGroup u(G.degree());
  auto add = [&](const Permutation& g) {
    if (g.is_identity() || u.contains(g)) return;
    gens.push_back(g);
    u = PermGroup(G.degree(), gens);
    queue.push_back(g);
  };
  for (const auto& s : seeds) add(s);
  while (!queue.empty()) {
    Permutation s = queue.front();
    queue.pop_front();
    for (const auto& g : G.generators()) add(s.conjugate_by(g));
  }
  return u;
}

PermGroup derived_subgroup(const PermGroup& G) {
  std::vector<Permutation> comms;
  const auto& gs = G.generators();
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j)
      comms.push_back(gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j]);
  return normal_closure(G, comms);
}

PermGroup derived_limit(const PermGroup& G) {
  PermGroup cur = G;
  Integer ord = cur.order();
  for (;;) {
    PermGroup next = derived_subgroup(cur);
    Integer next_ord = next.order();
    if (next_ord == ord) return cur;
    cur = std::move(next);
    ord = std::move(next_ord);
  }
}

bool is_k_transitive(const PermGroup& G, uint32_t k) {
  if (k == 0) return true;
  uint32_t n = G.degree();
  if (n < k) return false;
  std::vector<Point> pts(k);
  std::iota(pts.begin(), pts.end(), 0);
  PermGroup rebased = G.with_base(pts);
  const auto& lvls = rebased.chain().levels();
  for (uint32_t i = 0; i < k; ++i) {
    uint64_t orbit_size = i < lvls.size() ? lvls[i].orbit.size() : 1;
    if (orbit_size != n - i) return false;
  }
  return true;
}

bool is_sharply_k_transitive(const PermGroup& G, uint32_t k) {
  if (!is_k_transitive(G, k)) return false;
  Integer expect = 1;
  for (uint32_t i = 0; i < k; ++i) expect *= G.degree() - i;
  return G.order() == expect;
}

bool is_k_homogeneous(const PermGroup& G, uint32_t k) {
  uint32_t n = G.degree();
  if (k > n) return false;
  if (k == 0) return true;
  Integer total = 1;
  for (uint32_t i = 0; i < k; ++i) total = total * (n - i) / (i + 1);
  if (total > 20'000'000)
    throw resource_error("k_subset_orbit", 20'000'000, total.str() + " subsets");

  std::vector<Point> start(k);
  std::iota(start.begin(), start.end(), 0);
  std::unordered_map<uint64_t, std::vector<std::vector<Point>>> seen;
  std::deque<std::vector<Point>> queue;
  uint64_t count = 0;
  auto push = [&](std::vector<Point> s) {
    std::sort(s.begin(), s.end());
    auto& bucket = seen[hash_points(s)];
    for (auto& t : bucket)
      if (t == s) return;
    bucket.push_back(s);
    queue.push_back(std::move(s));
    ++count;
  };
  push(start);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (const auto& g : G.generators()) {
      std::vector<Point> t(k);
      for (uint32_t i = 0; i < k; ++i) t[i] = g[s[i]];
      push(std::move(t));
    }
  }
  return Integer(count) == total;
}

namespace {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Point find(Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<std::vector<Point>> minimal_blocks(const PermGroup& G, Point a, Point b) {
  if (!G.is_transitive()) throw precondition_error("minimal_blocks: group must be transitive");
  UnionFind uf(G.degree());
  std::deque<std::pair<Point, Point>> queue;
  uf.unite(a, b);
  queue.emplace_back(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (const auto& g : G.generators())
      if (uf.unite(g[x], g[y])) queue.emplace_back(g[x], g[y]);
  }
  std::unordered_map<Point, std::vector<Point>> blocks;
  for (Point p = 0; p < G.degree(); ++p) blocks[uf.find(p)].push_back(p);
  std::vector<std::vector<Point>> out;
  for (auto& [root, blk] : blocks) {
    std::sort(blk.begin(), blk.end());
    out.push_back(std::move(blk));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_primitive(const PermGroup& G) {
  if (!G.is_transitive()) throw precondition_error("is_primitive: group must be transitive");
  uint32_t n = G.degree();
  if (n <= 2) return true;
  for (Point p = 1; p < n; ++p)
    if (minimal_blocks(G, 0, p).size() != 1) return false;
  return true;
}

// ------------------------------------------------- subgroup conjugation orbit

namespace {

uint64_t orbit_partition_hash(uint32_t degree, const std::vector<Permutation>& gens) {
  UnionFind uf(degree);
  for (const auto& g : gens)
    for (Point p = 0; p < degree; ++p) uf.unite(p, g[p]);
  std::vector<std::vector<Point>> blocks(degree);
  for (Point p = 0; p < degree; ++p) blocks[uf.find(p)].push_back(p);
  std::vector<std::vector<Point>> nonempty;
  for (auto& b : blocks)
    if (!b.empty()) nonempty.push_back(std::move(b));
  std::sort(nonempty.begin(), nonempty.end());
  uint64_t h = 0x811c9dc5ull;
  for (const auto& b : nonempty) h = h * 0x100000001b3ull ^ hash_points(b);
  return h;
}

uint64_t conjugate_fingerprint(uint32_t degree, const std::vector<Permutation>& gens) {
  uint64_t h = orbit_partition_hash(degree, gens);
  for (const auto& g : gens) h = h * 0x9e3779b97f4a7c15ull ^ hash_points(g.cycle_type());
  return h;
}

}  // namespace

Integer subgroup_conjugation_orbit(const PermGroup& G, const PermGroup& H, const Config& cfg) {
  if (!H.is_subgroup_of(G))
    throw containment_error("subgroup_conjugation_orbit: H not contained in G");
  Integer index = G.order() / H.order();

  // Fast route: conjugates of H are the point stabilizers of [G:H], and
  // H^g = H iff H fixes the coset Hg, so orbit = index / #fix(H).
  bool coset_ok = index <= cfg.coset_index_cap;
  if (coset_ok) {
    uint64_t bytes = index.convert_to<uint64_t>() * (uint64_t)G.degree() * sizeof(Point);
    coset_ok = bytes <= cfg.coset_memory_budget;
  }
  if (coset_ok) {
    CosetTable table(G, H, cfg);
    uint64_t n = table.index();
    std::vector<bool> fixed(n, true);
    for (const auto& h : H.generators()) {
      Permutation img = table.permutation_image_of(h);
      for (uint64_t i = 0; i < n; ++i)
        if (img[(Point)i] != i) fixed[i] = false;
    }
    uint64_t fix = 0;
    for (uint64_t i = 0; i < n; ++i) fix += fixed[i];
    if (fix == 0 || n % fix != 0)
      throw integrity_error("subgroup_conjugation_orbit: fix count does not divide index");
    Integer orbit((uint64_t)(n / fix));
    if (orbit > cfg.conjugation_orbit_cap)
      throw resource_error("conjugation_orbit_cap", cfg.conjugation_orbit_cap,
                           "orbit length " + orbit.str());
    return orbit;
  }

  // Fingerprinted BFS over conjugates.
  struct Entry {
    std::vector<Permutation> gens;
    mutable std::shared_ptr<PermGroup> grp;  // built only on fingerprint collision
  };
  std::vector<Entry> entries;
  std::unordered_map<uint64_t, std::vector<size_t>> buckets;
  auto group_of = [&](const Entry& e) -> const PermGroup& {
    if (!e.grp) e.grp = std::make_shared<PermGroup>(G.degree(), e.gens);
    return *e.grp;
  };
  auto push = [&](std::vector<Permutation> gens) {
    uint64_t fp = conjugate_fingerprint(G.degree(), gens);
    auto& bucket = buckets[fp];
    for (size_t idx : bucket) {
      const PermGroup& stored = group_of(entries[idx]);
      bool same = true;
      for (const auto& g : gens)
        if (!stored.contains(g)) {
          same = false;
          break;
        }
      if (same) return;  // equal order, so one-sided containment suffices
    }
    bucket.push_back(entries.size());
    entries.push_back({std::move(gens), nullptr});
  };

  push(H.generators());
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries.size() > cfg.conjugation_orbit_cap)
      throw resource_error("conjugation_orbit_cap", cfg.conjugation_orbit_cap,
                           std::to_string(entries.size()) + " conjugates and growing");
    for (const auto& g : G.generators()) {
      std::vector<Permutation> conj;
      conj.reserve(entries[i].gens.size());
      Permutation gi = g.inverse();
      for (const auto& x : entries[i].gens) conj.push_back(gi * x * g);
      push(std::move(conj));
    }
  }
  return Integer((uint64_t)entries.size());
}

}  // namespace facta::perm
