#include "setexpr.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "error.hpp"

namespace tameline {

namespace {

ExprPtr leaf(ExprKind k) { return std::make_shared<Expr>(Expr{k, {}, {}}); }

}  // namespace

ExprPtr mk_point() {
  static ExprPtr e = leaf(ExprKind::Point);
  return e;
}
ExprPtr mk_interval() {
  static ExprPtr e = leaf(ExprKind::Interval);
  return e;
}
ExprPtr mk_cantor() {
  static ExprPtr e = leaf(ExprKind::Cantor);
  return e;
}
ExprPtr mk_cantorval() {
  static ExprPtr e = leaf(ExprKind::Cantorval);
  return e;
}

ExprPtr mk_union(std::vector<ExprPtr> children) {
  return std::make_shared<Expr>(Expr{ExprKind::Union, std::move(children), {}});
}
ExprPtr mk_reflect(ExprPtr e) {
  return std::make_shared<Expr>(Expr{ExprKind::Reflect, {std::move(e)}, {}});
}
ExprPtr mk_s2(ExprPtr left, ExprPtr right) {
  return std::make_shared<Expr>(
      Expr{ExprKind::S2, {std::move(left), std::move(right)}, {}});
}
ExprPtr mk_s(ExprPtr e) { return mk_s2(e, e); }
ExprPtr mk_salpha(Ordinal alpha, ExprPtr e) {
  return std::make_shared<Expr>(
      Expr{ExprKind::Salpha, {std::move(e)}, std::move(alpha)});
}
ExprPtr mk_omega(ExprPtr e) {
  return std::make_shared<Expr>(Expr{ExprKind::Omega, {std::move(e)}, {}});
}
ExprPtr mk_omega_i(ExprPtr e) {
  return std::make_shared<Expr>(Expr{ExprKind::OmegaI, {std::move(e)}, {}});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == ExprKind::Salpha && !(a->alpha == b->alpha)) return false;
  if (a->children.size() != b->children.size()) return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!expr_equal(a->children[i], b->children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct ExprParser {
  const std::string& s;
  size_t pos = 0;

  explicit ExprParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(pos, "expected " + expected);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("'") + c + "'");
    ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '_'))
      ++pos;
    if (pos == start) fail("a keyword");
    std::string w = s.substr(start, pos - start);
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return w;
  }

  Ordinal bracket_ordinal() {
    expect('[');
    size_t start = pos;
    size_t end = s.find(']', pos);
    if (end == std::string::npos) fail("']'");
    Ordinal a = Ordinal::parse(s.substr(start, end - start));
    pos = end + 1;
    return a;
  }

  ExprPtr expr() {
    std::string w = ident();
    if (w == "point") return mk_point();
    if (w == "interval") return mk_interval();
    if (w == "cantor") return mk_cantor();
    if (w == "cantorval") return mk_cantorval();
    if (w == "union") {
      expect('(');
      std::vector<ExprPtr> kids;
      kids.push_back(expr());
      while (peek(',')) {
        expect(',');
        kids.push_back(expr());
      }
      expect(')');
      return mk_union(std::move(kids));
    }
    if (w == "reflect") {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return mk_reflect(std::move(e));
    }
    if (w == "s") {
      if (peek('[')) {
        Ordinal a = bracket_ordinal();
        expect('(');
        ExprPtr e = expr();
        expect(')');
        return mk_salpha(std::move(a), std::move(e));
      }
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return mk_s(std::move(e));
    }
    if (w == "s2") {
      expect('(');
      ExprPtr l = expr();
      expect(',');
      ExprPtr r = expr();
      expect(')');
      return mk_s2(std::move(l), std::move(r));
    }
    if (w == "omega") {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return mk_omega(std::move(e));
    }
    if (w == "omegai") {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return mk_omega_i(std::move(e));
    }
    pos -= w.size();
    fail("point|interval|cantor|cantorval|union|reflect|S|S2|S[..]|omega|omegaI");
  }

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos != s.size()) fail("end of input");
    return e;
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return ExprParser(text).run(); }

std::string print_expr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Point: return "point";
    case ExprKind::Interval: return "interval";
    case ExprKind::Cantor: return "cantor";
    case ExprKind::Cantorval: return "cantorval";
    case ExprKind::Union: {
      std::string out = "union(";
      for (size_t i = 0; i < e->children.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(e->children[i]);
      }
      return out + ")";
    }
    case ExprKind::Reflect: return "reflect(" + print_expr(e->children[0]) + ")";
    case ExprKind::S2:
      if (expr_equal(e->children[0], e->children[1]))
        return "S(" + print_expr(e->children[0]) + ")";
      return "S2(" + print_expr(e->children[0]) + ", " +
             print_expr(e->children[1]) + ")";
    case ExprKind::Salpha:
      return "S[" + e->alpha.str() + "](" + print_expr(e->children[0]) + ")";
    case ExprKind::Omega: return "omega(" + print_expr(e->children[0]) + ")";
    case ExprKind::OmegaI: return "omegaI(" + print_expr(e->children[0]) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool ordinal_canonical(const std::vector<Ordinal::Term>& terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff < 1) return false;
    if (!ordinal_canonical(terms[i].exponent)) return false;
    if (i > 0) {
      Ordinal prev, cur;
      prev.terms = terms[i - 1].exponent;
      cur.terms = terms[i].exponent;
      if (Ordinal::cmp(prev, cur) != Cmp::GT) return false;
    }
  }
  return true;
}

void validate_rec(const ExprPtr& e, const std::string& path,
                  std::vector<Diagnostic>& out) {
  switch (e->kind) {
    case ExprKind::Union:
      if (e->children.empty())
        out.push_back({path, "union requires at least one member"});
      break;
    case ExprKind::Salpha:
      if (!ordinal_canonical(e->alpha.terms))
        out.push_back({path, "ordinal is not in Cantor normal form"});
      if (e->children.size() != 1)
        out.push_back({path, "S[..] takes exactly one argument"});
      break;
    case ExprKind::Reflect:
    case ExprKind::Omega:
    case ExprKind::OmegaI:
      if (e->children.size() != 1)
        out.push_back({path, "operator takes exactly one argument"});
      break;
    case ExprKind::S2:
      if (e->children.size() != 2)
        out.push_back({path, "S2 takes exactly two arguments"});
      break;
    default:
      if (!e->children.empty())
        out.push_back({path, "leaf term carries children"});
      break;
  }
  for (size_t i = 0; i < e->children.size(); ++i)
    validate_rec(e->children[i], path + "/" + std::to_string(i), out);
}

}  // namespace

std::vector<Diagnostic> validate(const ExprPtr& e) {
  std::vector<Diagnostic> out;
  validate_rec(e, "", out);
  return out;
}

// ---------------------------------------------------------------------------
// JSON tree form

namespace {

nlohmann::json to_json_rec(const ExprPtr& e) {
  using nlohmann::json;
  switch (e->kind) {
    case ExprKind::Point: return json{{"op", "point"}};
    case ExprKind::Interval: return json{{"op", "interval"}};
    case ExprKind::Cantor: return json{{"op", "cantor"}};
    case ExprKind::Cantorval: return json{{"op", "cantorval"}};
    case ExprKind::Union: {
      json kids = json::array();
      for (auto& c : e->children) kids.push_back(to_json_rec(c));
      return json{{"op", "union"}, {"children", kids}};
    }
    case ExprKind::Reflect:
      return json{{"op", "reflect"}, {"child", to_json_rec(e->children[0])}};
    case ExprKind::S2:
      return json{{"op", "s2"},
                  {"left", to_json_rec(e->children[0])},
                  {"right", to_json_rec(e->children[1])}};
    case ExprKind::Salpha:
      return json{{"op", "salpha"},
                  {"alpha", e->alpha.str()},
                  {"child", to_json_rec(e->children[0])}};
    case ExprKind::Omega:
      return json{{"op", "omega"}, {"child", to_json_rec(e->children[0])}};
    case ExprKind::OmegaI:
      return json{{"op", "omegaI"}, {"child", to_json_rec(e->children[0])}};
  }
  return {};
}

ExprPtr from_json_rec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op"))
    throw Error("JsonFormat", "expression node must be an object with \"op\"");
  std::string op = j.at("op").get<std::string>();
  if (op == "point") return mk_point();
  if (op == "interval") return mk_interval();
  if (op == "cantor") return mk_cantor();
  if (op == "cantorval") return mk_cantorval();
  if (op == "union") {
    std::vector<ExprPtr> kids;
    for (auto& c : j.at("children")) kids.push_back(from_json_rec(c));
    return mk_union(std::move(kids));
  }
  if (op == "reflect") return mk_reflect(from_json_rec(j.at("child")));
  if (op == "s2")
    return mk_s2(from_json_rec(j.at("left")), from_json_rec(j.at("right")));
  if (op == "salpha")
    return mk_salpha(Ordinal::parse(j.at("alpha").get<std::string>()),
                     from_json_rec(j.at("child")));
  if (op == "omega") return mk_omega(from_json_rec(j.at("child")));
  if (op == "omegaI") return mk_omega_i(from_json_rec(j.at("child")));
  throw Error("JsonFormat", "unknown expression op: " + op);
}

}  // namespace

std::string expr_to_json(const ExprPtr& e) { return to_json_rec(e).dump(); }

ExprPtr expr_from_json(const std::string& text) {
  return from_json_rec(nlohmann::json::parse(text));
}

// ---------------------------------------------------------------------------
// Canonical placement.
//
// Every term is realized inside an allocated frame [a,b]:
//   point       midpoint of the frame
//   interval    the whole frame
//   cantor      middle-thirds construction
//   cantorval   middle thirds, the middle kept as a block at even depths
//               and removed at odd depths
//   union(k)    slot i is [i/k,(i+1)/k] of the frame; each copy occupies
//               the central half of its slot
//   S2          central interval at [2/5,3/5]; left copies in the central
//               halves of [1-2^-n, 1-2^-(n+1)] of the left region, right
//               side mirrored
//   omega       copy n at [1-2^-n, 1-(3/4)2^-n], limit at the right end
//   omegaI      omega-style copies in [0,1/2] ascending to 1/2, the fresh
//               interval at [1/2,3/4]
//   S[alpha]    successor ordinals unfold through S2; at limits the below
//               ranks are inserted by rank order into the left region
//               (midpoint subdivision toward the accumulation end), the
//               above ranks mirrored on the right
// Unmaterialized tails stay covered by a single closed block, which keeps
// consecutive stages nested.

namespace {

Rat pow2neg(std::uint64_t n) {
  Int den = Int(1) << static_cast<unsigned>(n);
  return Rat(Int(1), den);
}

void denote_into(const ExprPtr& e, const Rat& a, const Rat& b,
                 std::uint64_t depth, RatApprox& out);

// Family placement toward an accumulation end shared by S2 and omega-style
// nodes. dir=+1: start at `from`, accumulate at `to` (from < to).
struct Seg {
  Rat lo, hi;
};

Seg family_slot(const Rat& from, const Rat& to, std::uint64_t n, bool shaved) {
  Rat w = to - from;
  Rat s0 = from + w * (1 - pow2neg(n));
  Rat s1 = from + w * (1 - pow2neg(n + 1));
  if (!shaved) return {s0, s1};
  Rat q = (s1 - s0) / 4;
  return {s0 + q, s1 - q};
}

void denote_cantorish(bool cantorval, const Rat& a, const Rat& b,
                      std::uint64_t depth, RatApprox& out) {
  struct Piece {
    Rat lo, hi;
    std::uint64_t level;
  };
  std::vector<Piece> active{{a, b, 0}};
  for (std::uint64_t d = 0; d < depth; ++d) {
    std::vector<Piece> next;
    for (auto& p : active) {
      Rat w = (p.hi - p.lo) / 3;
      next.push_back({p.lo, p.lo + w, p.level + 1});
      if (cantorval && p.level % 2 == 0)
        out.blocks.emplace_back(p.lo + w, p.hi - w);
      next.push_back({p.hi - w, p.hi, p.level + 1});
    }
    active = std::move(next);
  }
  for (auto& p : active) out.blocks.emplace_back(p.lo, p.hi);
}

void denote_s2(const ExprPtr& e, const Rat& a, const Rat& b, std::uint64_t depth,
               RatApprox& out) {
  Rat w = b - a;
  Rat cl = a + w * Rat(2, 5);
  Rat cr = a + w * Rat(3, 5);
  if (depth == 0) {
    out.blocks.emplace_back(a, b);
    return;
  }
  for (std::uint64_t n = 0; n < depth; ++n) {
    Seg ls = family_slot(a, cl, n, true);
    denote_into(e->children[0], ls.lo, ls.hi, depth - 1 - n, out);
    Seg rs = family_slot(Rat(0), Rat(1), n, true);  // param space, mirrored
    Rat rlo = b - (b - cr) * rs.hi;
    Rat rhi = b - (b - cr) * rs.lo;
    denote_into(e->children[1], rlo, rhi, depth - 1 - n, out);
  }
  Rat tail_l = a + (cl - a) * (1 - pow2neg(depth));
  Rat tail_r = b - (b - cr) * (1 - pow2neg(depth));
  out.blocks.emplace_back(tail_l, tail_r);
}

void denote_omega(const ExprPtr& e, bool with_interval, const Rat& a,
                  const Rat& b, std::uint64_t depth, RatApprox& out) {
  Rat w = b - a;
  Rat limit = with_interval ? a + w / 2 : b;
  Rat tail_end = with_interval ? a + w * Rat(3, 4) : b;
  if (depth == 0) {
    out.blocks.emplace_back(a, tail_end);
    return;
  }
  for (std::uint64_t n = 0; n < depth; ++n) {
    Rat s0 = a + (limit - a) * (1 - pow2neg(n));
    Rat s1 = a + (limit - a) * (1 - pow2neg(n) * Rat(3, 4));
    denote_into(e->children[0], s0, s1, depth - 1 - n, out);
  }
  Rat tail_l = a + (limit - a) * (1 - pow2neg(depth));
  out.blocks.emplace_back(tail_l, tail_end);
}

void denote_salpha_limit(const ExprPtr& e, const Rat& a, const Rat& b,
                         std::uint64_t depth, RatApprox& out) {
  Rat w = b - a;
  Rat cl = a + w * Rat(2, 5);
  Rat cr = a + w * Rat(3, 5);
  if (depth == 0) {
    out.blocks.emplace_back(a, b);
    return;
  }
  std::size_t per_side = (depth + 1) / 2;
  std::vector<Ordinal> ranks = enumerate_below(e->alpha, per_side);

  // Insert ranks in enumeration order; each new rank subdivides the space
  // between its rank-order neighbors (halving toward the accumulation end
  // when it lands past every placed rank).
  struct Placed {
    Ordinal rank;
    Rat lo, hi;  // parametric in [0,1), accumulation at 1
  };
  std::vector<Placed> placed;
  for (const Ordinal& r : ranks) {
    auto it = std::lower_bound(
        placed.begin(), placed.end(), r,
        [](const Placed& p, const Ordinal& o) { return p.rank < o; });
    Rat u = (it == placed.begin()) ? Rat(0) : (it - 1)->hi;
    Rat v;
    if (it == placed.end()) {
      v = mid(u, Rat(1));  // leave room toward the accumulation end
    } else {
      v = it->lo;
    }
    Rat q = (v - u) / 4;
    placed.insert(it, Placed{r, u + q, v - q});
  }
  for (std::size_t i = 0; i < placed.size(); ++i) {
    ExprPtr block = mk_salpha(placed[i].rank, e->children[0]);
    std::uint64_t d = depth > i + 1 ? depth - 1 - i : 0;
    // below side
    Rat lo = a + (cl - a) * placed[i].lo;
    Rat hi = a + (cl - a) * placed[i].hi;
    denote_into(block, lo, hi, d, out);
    // above side, mirrored
    Rat rlo = b - (b - cr) * placed[i].hi;
    Rat rhi = b - (b - cr) * placed[i].lo;
    denote_into(block, rlo, rhi, d, out);
  }
  Rat fmax = 0;
  for (auto& p : placed) fmax = std::max(fmax, p.hi);
  Rat cover = mid(fmax, Rat(1));  // beyond every placed block
  Rat tail_l = a + (cl - a) * cover;
  Rat tail_r = b - (b - cr) * cover;
  out.blocks.emplace_back(tail_l, tail_r);
}

void denote_into(const ExprPtr& e, const Rat& a, const Rat& b,
                 std::uint64_t depth, RatApprox& out) {
  switch (e->kind) {
    case ExprKind::Point: {
      Rat m = mid(a, b);
      out.blocks.emplace_back(m, m);
      return;
    }
    case ExprKind::Interval:
      out.blocks.emplace_back(a, b);
      return;
    case ExprKind::Cantor:
      denote_cantorish(false, a, b, depth, out);
      return;
    case ExprKind::Cantorval:
      denote_cantorish(true, a, b, depth, out);
      return;
    case ExprKind::Union: {
      size_t k = e->children.size();
      Rat w = (b - a) / Rat(static_cast<unsigned>(k));
      for (size_t i = 0; i < k; ++i) {
        Rat slo = a + w * Rat(static_cast<unsigned>(i));
        Rat q = w / 4;
        denote_into(e->children[i], slo + q, slo + w - q, depth, out);
      }
      return;
    }
    case ExprKind::Reflect: {
      RatApprox inner;
      denote_into(e->children[0], a, b, depth, inner);
      for (auto& blk : inner.blocks)
        out.blocks.emplace_back(a + b - blk.second, a + b - blk.first);
      return;
    }
    case ExprKind::S2:
      denote_s2(e, a, b, depth, out);
      return;
    case ExprKind::Omega:
      denote_omega(e, false, a, b, depth, out);
      return;
    case ExprKind::OmegaI:
      denote_omega(e, true, a, b, depth, out);
      return;
    case ExprKind::Salpha: {
      if (e->alpha.is_zero()) {
        denote_into(e->children[0], a, b, depth, out);
      } else if (!e->alpha.is_limit()) {
        ExprPtr prev = mk_salpha(e->alpha.pred(), e->children[0]);
        ExprPtr s2 = mk_s2(prev, prev);
        denote_s2(s2, a, b, depth, out);
      } else {
        denote_salpha_limit(e, a, b, depth, out);
      }
      return;
    }
  }
}

}  // namespace

RatApprox denote_sample(const ExprPtr& e, std::uint64_t depth) {
  RatApprox out;
  out.stage = depth;
  denote_into(e, Rat(0), Rat(1), depth, out);
  out.sort_and_merge();
  return out;
}

}  // namespace tameline
