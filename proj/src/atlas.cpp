#include "facta/atlas.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "facta/octonion.hpp"

namespace facta::atlas {

using arith::Family;
using arith::Integer;
using matgrp::Action;
using matgrp::Field;
using matgrp::FieldPtr;
using matgrp::FF;
using matgrp::Mat;
using matgrp::MatAction;
using matgrp::MatGroup;
using perm::Permutation;
using perm::PermGroup;
using perm::Point;

// ------------------------------------------------------------------- parser

namespace {

struct ParsedSpec {
  std::string name;
  std::vector<uint64_t> ints;
  std::vector<std::string> subspecs;
  std::string text_arg;
  std::vector<std::string> decorations;
  std::string action;  // empty = default
};

size_t matching_paren(const std::string& s, size_t open) {
  int depth = 0;
  for (size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  throw argument_error("group spec: unbalanced parentheses in '" + s + "'");
}

std::string canonical_spec(const std::string& raw) {
  std::string s;
  bool in_str = false;
  for (char c : raw) {
    if (c == '"') in_str = !in_str;
    if (in_str || !isspace((unsigned char)c)) s.push_back(c);
  }
  return s;
}

ParsedSpec parse_spec(const std::string& raw) {
  std::string s = canonical_spec(raw);
  ParsedSpec ps;
  size_t i = 0;
  while (i < s.size() && (isalnum((unsigned char)s[i]))) ps.name.push_back(s[i++]);
  if (ps.name.empty()) throw argument_error("group spec: missing name in '" + raw + "'");
  if (i >= s.size() || s[i] != '(')
    throw argument_error("group spec: expected '(' in '" + raw + "'");
  size_t close = matching_paren(s, i);
  std::string args = s.substr(i + 1, close - i - 1);
  i = close + 1;

  // split args at top-level commas
  std::vector<std::string> parts;
  {
    int depth = 0;
    bool in_str = false;
    std::string cur;
    for (char c : args) {
      if (c == '"') in_str = !in_str;
      if (!in_str) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
          parts.push_back(cur);
          cur.clear();
          continue;
        }
      }
      cur.push_back(c);
    }
    if (!cur.empty()) parts.push_back(cur);
  }
  for (const auto& part : parts) {
    if (part.empty()) continue;
    if (part[0] == '"') {
      if (part.back() != '"') throw argument_error("group spec: unterminated string");
      ps.text_arg = part.substr(1, part.size() - 2);
    } else if (isdigit((unsigned char)part[0])) {
      ps.ints.push_back(std::stoull(part));
    } else {
      ps.subspecs.push_back(part);
    }
  }

  while (i < s.size() && s[i] == '.') {
    ++i;
    std::string d;
    while (i < s.size() && isalnum((unsigned char)s[i])) d.push_back(s[i++]);
    if (d.empty()) throw argument_error("group spec: empty decoration");
    ps.decorations.push_back(d);
  }
  if (i < s.size() && s[i] == '@') {
    ++i;
    while (i < s.size() && isalnum((unsigned char)s[i])) ps.action.push_back(s[i++]);
  }
  if (i != s.size()) throw argument_error("group spec: trailing characters in '" + raw + "'");
  return ps;
}

Action parse_action(const std::string& a) {
  if (a == "proj") return Action::projective_points;
  if (a == "vec") return Action::nonzero_vectors;
  if (a == "sing") return Action::singular_points;
  if (a == "nonsing") return Action::nonsingular_points;
  if (a == "aflag") return Action::antiflags;
  throw argument_error("group spec: unknown action '@" + a + "'");
}

Integer factorial(uint64_t n) {
  Integer f = 1;
  for (uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Permutation cycle_perm(uint32_t degree, std::initializer_list<Point> cyc) {
  std::vector<Point> img(degree);
  for (Point i = 0; i < degree; ++i) img[i] = i;
  auto it = cyc.begin();
  Point first = *it;
  Point prev = first;
  ++it;
  for (; it != cyc.end(); ++it) {
    img[prev] = *it;
    prev = *it;
  }
  img[prev] = first;
  return Permutation(std::move(img));
}

PermGroup alternating(uint32_t n) {
  if (n < 3) {
    if (n <= 2) return PermGroup(n);
    return PermGroup(n);
  }
  std::vector<Permutation> gens;
  gens.push_back(cycle_perm(n, {0, 1, 2}));
  if (n > 3) {
    std::vector<Point> img(n);
    if (n % 2 == 1) {
      for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
    } else {
      img[0] = 0;
      for (Point i = 1; i < n; ++i) img[i] = i % (n - 1) + 1;
    }
    gens.emplace_back(std::move(img));
  }
  PermGroup g(n, std::move(gens));
  g.expect_order(factorial(n) / 2);
  return g;
}

PermGroup symmetric(uint32_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
    gens.emplace_back(std::move(img));
    gens.push_back(cycle_perm(n, {0, 1}));
  }
  PermGroup g(n, std::move(gens));
  g.expect_order(factorial(n));
  return g;
}

PermGroup sharply_two_transitive(uint64_t p, uint64_t ell) {
  if (!arith::is_prime(p)) throw argument_error("SharplyTwoTransitive: p must be prime");
  if (ell < 1 || (p - 1) % ell != 0)
    throw argument_error("SharplyTwoTransitive: ell must divide p-1");
  // SL2(5) inside SL2(p): fix the standard order-4 element and scan order-3
  // partners until the closure has 120 elements.
  auto fp = Field::get((uint32_t)p, 1);
  const Field& F = *fp;
  auto closure_size = [&](const Mat& s, const Mat& t, size_t cap) -> size_t {
    std::vector<Mat> elts{Mat::identity(fp, 2)};
    std::vector<Mat> queue{Mat::identity(fp, 2)};
    auto contains = [&](const Mat& m) {
      for (const auto& e : elts)
        if (e == m) return true;
      return false;
    };
    while (!queue.empty()) {
      Mat x = queue.back();
      queue.pop_back();
      for (const Mat* g : {&s, &t}) {
        Mat y = x * *g;
        if (!contains(y)) {
          elts.push_back(y);
          queue.push_back(y);
          if (elts.size() > cap) return elts.size();
        }
      }
    }
    return elts.size();
  };
  Mat s0(fp, 2, 2);
  s0.at(0, 1) = 1;
  s0.at(1, 0) = F.neg(1);
  Mat t_found(fp, 2, 2);
  bool found = false;
  for (FF a = 0; a < p && !found; ++a)
    for (FF b = 0; b < p && !found; ++b) {
      // order-3: trace = -1, det = 1
      FF d = F.sub(F.neg(1), a);
      FF ad = F.mul(a, d);
      // need bc = ad - 1
      FF bc = F.sub(ad, 1);
      if (b == 0) {
        if (bc != 0) continue;
        Mat t(fp, 2, 2);
        t.at(0, 0) = a;
        t.at(1, 1) = d;
        if (closure_size(s0, t, 130) == 120) {
          t_found = t;
          found = true;
        }
        continue;
      }
      FF c = F.div(bc, b);
      Mat t(fp, 2, 2);
      t.at(0, 0) = a;
      t.at(0, 1) = b;
      t.at(1, 0) = c;
      t.at(1, 1) = d;
      if (closure_size(s0, t, 130) == 120) {
        t_found = t;
        found = true;
      }
    }
  if (!found) throw integrity_error("SharplyTwoTransitive: no SL2(5) found in SL2(p)");

  uint32_t n = (uint32_t)(p * p);
  auto point = [&](FF x, FF y) { return (Point)(x * p + y); };
  auto linear_perm = [&](const Mat& m) {
    std::vector<Point> img(n);
    for (FF x = 0; x < p; ++x)
      for (FF y = 0; y < p; ++y) {
        std::vector<FF> v{x, y};
        auto w = m.apply(v);
        img[point(x, y)] = point(w[0], w[1]);
      }
    return Permutation(std::move(img));
  };
  std::vector<Permutation> gens;
  {
    std::vector<Point> img(n);
    for (FF x = 0; x < p; ++x)
      for (FF y = 0; y < p; ++y) img[point(x, y)] = point((FF)((x + 1) % p), y);
    gens.emplace_back(std::move(img));
    std::vector<Point> img2(n);
    for (FF x = 0; x < p; ++x)
      for (FF y = 0; y < p; ++y) img2[point(x, y)] = point(x, (FF)((y + 1) % p));
    gens.emplace_back(std::move(img2));
  }
  gens.push_back(linear_perm(s0));
  gens.push_back(linear_perm(t_found));
  if (ell > 1) {
    FF lam = F.pow(F.primitive(), (p - 1) / ell);
    Mat sc(fp, 2, 2);
    sc.at(0, 0) = lam;
    sc.at(1, 1) = lam;
    gens.push_back(linear_perm(sc));
  }
  PermGroup g(n, std::move(gens));
  g.expect_order(Integer(p) * p * 120 * ell);
  if (g.order() != Integer(p) * p * 120 * ell)
    throw integrity_error("SharplyTwoTransitive: order mismatch");
  return g;
}

// family lookups for classical names
struct ClassicalName {
  Family family;
  bool valid = false;
};

ClassicalName classical_name(const std::string& n) {
  if (n == "GL" || n == "PGL") return {Family::GL, true};
  if (n == "SL" || n == "PSL") return {Family::SL, true};
  if (n == "Sp" || n == "PSp") return {Family::Sp, true};
  if (n == "SU" || n == "PSU") return {Family::SU, true};
  if (n == "GOPlus") return {Family::GOPlus, true};
  if (n == "GOMinus") return {Family::GOMinus, true};
  if (n == "OmegaPlus") return {Family::OmegaPlus, true};
  if (n == "OmegaMinus") return {Family::OmegaMinus, true};
  return {};
}

std::mutex cache_mu;
std::unordered_map<std::string, std::unique_ptr<Built>> cache;

Built build_fresh(const std::string& spec, const Config& cfg);

}  // namespace

const Built& build(const std::string& spec, const Config& cfg) {
  std::string key = canonical_spec(spec);
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  Built fresh = build_fresh(key, cfg);
  std::lock_guard<std::mutex> lock(cache_mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Built>(std::move(fresh))).first;
  return *it->second;
}

namespace {

Built build_fresh(const std::string& spec, const Config& cfg) {
  ParsedSpec ps = parse_spec(spec);
  Built out;
  out.spec = spec;

  auto need_ints = [&](size_t k) {
    if (ps.ints.size() != k)
      throw argument_error("group spec '" + spec + "': expected " + std::to_string(k) +
                           " numeric arguments");
  };

  if (ps.name == "Alt") {
    need_ints(1);
    out.group = alternating((uint32_t)ps.ints[0]);
    return out;
  }
  if (ps.name == "Sym") {
    need_ints(1);
    out.group = symmetric((uint32_t)ps.ints[0]);
    return out;
  }
  if (ps.name == "Cyclic") {
    need_ints(1);
    uint32_t n = (uint32_t)ps.ints[0];
    std::vector<Point> img(n);
    for (Point i = 0; i < n; ++i) img[i] = (i + 1) % n;
    out.group = PermGroup(n, {Permutation(std::move(img))});
    return out;
  }
  if (ps.name == "Dihedral") {
    need_ints(1);
    if (ps.ints[0] % 2 || ps.ints[0] < 4)
      throw argument_error("Dihedral(n): n must be the even group order");
    uint32_t m = (uint32_t)(ps.ints[0] / 2);
    std::vector<Point> rot(m), flip(m);
    for (Point i = 0; i < m; ++i) {
      rot[i] = (i + 1) % m;
      flip[i] = (m - i) % m;
    }
    out.group = PermGroup(m, {Permutation(std::move(rot)), Permutation(std::move(flip))});
    return out;
  }
  if (ps.name == "Trivial") {
    need_ints(1);
    out.group = PermGroup((uint32_t)ps.ints[0]);
    return out;
  }
  if (ps.name == "Gens") {
    if (ps.ints.size() != 1 || ps.text_arg.empty())
      throw argument_error("Gens(n, \"cycles; cycles\") expected");
    uint32_t n = (uint32_t)ps.ints[0];
    std::vector<Permutation> gens;
    std::string cur;
    std::istringstream is(ps.text_arg);
    while (std::getline(is, cur, ';')) gens.push_back(Permutation::parse_cycles(n, cur));
    out.group = PermGroup(n, std::move(gens));
    return out;
  }
  if (ps.name == "Product") {
    if (ps.subspecs.size() != 2) throw argument_error("Product(spec, spec) expected");
    const Built& a = build(ps.subspecs[0], cfg);
    const Built& b = build(ps.subspecs[1], cfg);
    uint32_t na = a.group.degree(), nb = b.group.degree();
    std::vector<Permutation> gens;
    for (const auto& g : a.group.generators()) {
      std::vector<Point> img(na + nb);
      for (Point i = 0; i < na; ++i) img[i] = g[i];
      for (Point i = 0; i < nb; ++i) img[na + i] = na + i;
      gens.emplace_back(std::move(img));
    }
    for (const auto& g : b.group.generators()) {
      std::vector<Point> img(na + nb);
      for (Point i = 0; i < na; ++i) img[i] = i;
      for (Point i = 0; i < nb; ++i) img[na + i] = na + g[i];
      gens.emplace_back(std::move(img));
    }
    out.group = PermGroup(na + nb, std::move(gens));
    out.group.expect_order(a.group.order() * b.group.order());
    return out;
  }
  if (ps.name == "Mathieu") {
    need_ints(1);
    uint32_t n = (uint32_t)ps.ints[0];
    auto gens = mathieu_generators(n);
    PermGroup g(n, gens);
    Integer order;
    uint32_t trans;
    switch (n) {
      case 11: order = 7920; trans = 4; break;
      case 12: order = 95040; trans = 5; break;
      case 22: order = 443520; trans = 3; break;
      case 23: order = 10200960; trans = 4; break;
      case 24: order = 244823040; trans = 5; break;
      default: throw argument_error("Mathieu(n): n must be 11, 12, 22, 23 or 24");
    }
    if (g.order() != order) throw integrity_error("Mathieu data failed the order certificate");
    if (!perm::is_k_transitive(g, trans))
      throw integrity_error("Mathieu data failed the transitivity certificate");
    out.group = std::move(g);
    return out;
  }
  if (ps.name == "SharplyTwoTransitive") {
    need_ints(2);
    out.group = sharply_two_transitive(ps.ints[0], ps.ints[1]);
    return out;
  }
  if (ps.name == "PGammaL") {
    need_ints(2);
    std::string base = "SL(" + std::to_string(ps.ints[0]) + "," + std::to_string(ps.ints[1]) +
                       ").f";
    for (const auto& d : ps.decorations) base += "." + d;
    if (!ps.action.empty()) base += "@" + ps.action;
    return build_fresh(base, cfg);
  }
  if (ps.name == "G2") {
    need_ints(1);
    MatGroup g2 = matgrp::g2_matrix_group(ps.ints[0]);
    Integer order = matgrp::g2_order(ps.ints[0]);
    Integer mult = 1;
    for (const auto& d : ps.decorations) {
      if (d == "f") {
        g2 = matgrp::adjoin_frobenius(g2);
        mult *= g2.field->f();
      } else {
        throw argument_error("G2: unsupported decoration ." + d);
      }
    }
    Action action = ps.action.empty() ? Action::projective_points : parse_action(ps.action);
    auto act = std::make_shared<MatAction>(permutation_image(g2, action, cfg));
    act->group.expect_order(order * mult);
    if (act->group.order() != order * mult)
      throw integrity_error("G2 image failed the order certificate");
    out.group = act->group;
    out.matrices = std::make_shared<MatGroup>(std::move(g2));
    out.action = std::move(act);
    return out;
  }

  ClassicalName cn = classical_name(ps.name);
  if (cn.valid) {
    need_ints(2);
    uint32_t dim = (uint32_t)ps.ints[0];
    uint64_t q = ps.ints[1];
    bool omega = cn.family == Family::OmegaPlus || cn.family == Family::OmegaMinus;
    Family build_family = cn.family;
    if (cn.family == Family::OmegaPlus) build_family = Family::GOPlus;
    if (cn.family == Family::OmegaMinus) build_family = Family::GOMinus;

    MatGroup mg = matgrp::classical_matrix_group(build_family, dim, q);
    Integer image_order = matgrp::classical_image_order(build_family, dim, q);
    Integer mult = 1;
    for (const auto& d : ps.decorations) {
      if (d == "f") {
        mg = matgrp::adjoin_frobenius(mg);
        mult *= mg.field->f();
      } else if (d == "g") {
        mg = matgrp::adjoin_duality(mg);
        mult *= 2;
      } else if (d == "fg") {
        if (mg.form) throw argument_error("duality decorations need a linear group");
        matgrp::SemilinearGen gen;
        gen.m = Mat::identity(mg.field, mg.dim);
        gen.frob = 1;
        gen.dual = true;
        mg.gens.push_back(std::move(gen));
        mult *= 2;
      } else {
        throw argument_error("group spec: unknown decoration ." + d);
      }
    }
    Action action;
    if (!ps.action.empty()) {
      action = parse_action(ps.action);
    } else {
      action = omega || build_family == Family::GOPlus || build_family == Family::GOMinus
                   ? Action::singular_points
                   : Action::projective_points;
    }
    auto act = std::make_shared<MatAction>(permutation_image(mg, action, cfg));
    PermGroup grp = act->group;

    // The faithful-order bookkeeping is certified on the projective action;
    // other actions recertify below via the honest chain.
    Integer expected = image_order * mult;
    if (action == Action::nonzero_vectors) {
      // scalars act freely on vectors: the image is the full matrix group
      Integer scalar_fix = arith::classical_order(build_family, dim, q).order / image_order;
      expected = arith::classical_order(build_family, dim, q).order * mult / 1;
      (void)scalar_fix;
    }
    grp.expect_order(expected);
    if (grp.order() != expected)
      throw integrity_error("classical image failed the order certificate for " + spec +
                            ": got " + grp.order().str() + ", expected " + expected.str());

    if (omega) {
      PermGroup om = perm::derived_subgroup(grp);
      Integer om_order = arith::classical_order(cn.family, dim, q).order /
                         arith::projective_kernel(cn.family, dim, q);
      if (mult != 1)
        throw argument_error("Omega specs take no decorations; decorate GO instead");
      if (om.order() != om_order)
        throw integrity_error("Omega image failed the order certificate for " + spec);
      out.group = std::move(om);
    } else {
      out.group = std::move(grp);
    }
    out.matrices = std::make_shared<MatGroup>(std::move(mg));
    out.action = std::move(act);
    return out;
  }

  throw argument_error("group spec: unknown constructor '" + ps.name + "'");
}

}  // namespace

// ------------------------------------------------------------------ recipes

namespace {

std::mutex native_mu;
std::unordered_map<std::string, NativeBuilder>& native_registry() {
  static std::unordered_map<std::string, NativeBuilder> reg;
  return reg;
}

}  // namespace

void register_native(const std::string& name, NativeBuilder fn) {
  std::lock_guard<std::mutex> lock(native_mu);
  native_registry()[name] = std::move(fn);
}

bool has_native(const std::string& name) {
  ensure_builtin_natives();
  std::lock_guard<std::mutex> lock(native_mu);
  return native_registry().count(name) > 0;
}

perm::PermGroup evaluate_recipe(const Built& parent, const SubgroupRecipe& recipe,
                                const Config& cfg) {
  ensure_builtin_natives();
  PermGroup current = parent.group;
  uint32_t n = parent.group.degree();
  for (const auto& step : recipe.steps) {
    switch (step.kind) {
      case RecipeStep::Kind::PointStabilizer:
        current = current.stabilizer(std::span<const Point>(step.points));
        break;
      case RecipeStep::Kind::SetStabilizer:
        current = perm::set_stabilizer(current, step.points, cfg);
        break;
      case RecipeStep::Kind::DerivedSubgroup:
        current = perm::derived_subgroup(current);
        break;
      case RecipeStep::Kind::DerivedLimit:
        current = perm::derived_limit(current);
        break;
      case RecipeStep::Kind::NormalClosure: {
        std::vector<Permutation> seeds;
        for (const auto& w : step.words) seeds.push_back(perm::evaluate_word(parent.group, w));
        current = perm::normal_closure(current, seeds);
        break;
      }
      case RecipeStep::Kind::GeneratorWords: {
        std::vector<Permutation> gens;
        for (const auto& w : step.words) gens.push_back(perm::evaluate_word(parent.group, w));
        current = PermGroup(n, std::move(gens));
        break;
      }
      case RecipeStep::Kind::AdjoinWords: {
        std::vector<Permutation> gens = current.generators();
        for (const auto& w : step.words) gens.push_back(perm::evaluate_word(parent.group, w));
        current = PermGroup(n, std::move(gens));
        break;
      }
      case RecipeStep::Kind::KernelOfBlockAction: {
        if (step.points.size() != 2)
          throw argument_error("KernelOfBlockAction needs exactly two seed points");
        auto blocks = perm::minimal_blocks(current, step.points[0], step.points[1]);
        std::vector<uint32_t> block_of(n);
        for (uint32_t bi = 0; bi < blocks.size(); ++bi)
          for (Point p : blocks[bi]) block_of[p] = bi;
        std::vector<Permutation> images;
        for (const auto& g : current.generators()) {
          std::vector<Point> img(blocks.size());
          for (uint32_t bi = 0; bi < blocks.size(); ++bi)
            img[bi] = block_of[g[blocks[bi][0]]];
          images.emplace_back(std::move(img));
        }
        current = perm::homomorphism_kernel(current, images, (uint32_t)blocks.size());
        break;
      }
      case RecipeStep::Kind::Group: {
        const Built& sub = build(step.text, cfg);
        if (sub.group.degree() != n)
          throw argument_error("recipe Group step: degree mismatch for " + step.text);
        PermGroup copy(n, sub.group.generators());
        copy.expect_order(sub.group.order());
        current = std::move(copy);
        break;
      }
      case RecipeStep::Kind::Native: {
        NativeBuilder fn;
        {
          std::lock_guard<std::mutex> lock(native_mu);
          auto it = native_registry().find(step.text);
          if (it == native_registry().end())
            throw argument_error("recipe Native step: unknown builder '" + step.text + "'");
          fn = it->second;
        }
        std::vector<Permutation> gens = fn(parent);
        current = PermGroup(n, std::move(gens));
        break;
      }
      case RecipeStep::Kind::Conjugate: {
        if (step.words.size() != 1)
          throw argument_error("recipe Conjugate step: exactly one word expected");
        current = current.conjugate_by(perm::evaluate_word(parent.group, step.words[0]));
        break;
      }
    }
  }
  Integer got = current.order();
  if (got != recipe.expected_order)
    throw integrity_error("recipe checksum mismatch: got order " + got.str() + ", expected " +
                          recipe.expected_order.str());
  for (const auto& g : current.generators())
    if (!parent.group.contains(g))
      throw containment_error("recipe result is not contained in the parent group");
  return current;
}

// ---------------------------------------------------------- native builders

namespace {

// SL2(q^s).Gal (or Sp2(q^s).Gal, the same group with its form) embedded in a
// parent of dimension 2s over GF(q) by scalar restriction; for symplectic
// parents the trace form is aligned to the parent's Gram.
std::vector<Permutation> native_sl2_field_ext(const Built& parent) {
  if (!parent.matrices || !parent.action)
    throw argument_error("sl2_field_ext: parent lacks matrix context");
  const MatGroup& pg = *parent.matrices;
  const Field& f = *pg.field;
  if (pg.dim % 2) throw argument_error("sl2_field_ext: odd parent dimension");
  uint32_t s = pg.dim / 2;
  uint64_t qs = 1;
  for (uint32_t i = 0; i < s; ++i) qs *= f.q();

  bool symplectic = pg.form && pg.form->kind == matgrp::FormKind::symplectic;
  MatGroup big = matgrp::classical_matrix_group(symplectic ? Family::Sp : Family::SL, 2, qs);
  big = matgrp::adjoin_frobenius(big);
  MatGroup small = matgrp::restrict_scalars(big, pg.field);

  if (symplectic) {
    Mat r_small = matgrp::symplectic_standardization(small.form->matrix);
    Mat r_parent = matgrp::symplectic_standardization(pg.form->matrix);
    // align: move small into standard coordinates, then into the parent's
    Mat r = r_parent.inverse() * r_small;
    small = small.conjugated(r);
    if (!(small.form->matrix == pg.form->matrix))
      throw integrity_error("sl2_field_ext: form alignment failed");
  }
  const Field dummy = f;
  std::vector<Permutation> out;
  const MatAction& act = *parent.action;
  MatGroup probe = small;
  MatAction imaged = permutation_image(probe, act.kind);
  // The parent's enumeration is canonical, so identical點 sets arise.
  if (imaged.degree != act.degree)
    throw integrity_error("sl2_field_ext: action degree mismatch");
  for (auto& g : imaged.group.generators()) out.push_back(g);
  return out;
}

}  // namespace

void ensure_builtin_natives() {
  static std::once_flag once;
  std::call_once(once, [] {
    register_native("sl2_field_ext", native_sl2_field_ext);
  });
}

}  // namespace facta::atlas
