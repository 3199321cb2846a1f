#include "ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "error.hpp"

namespace tameline {

namespace {

Ordinal from_terms(std::vector<Ordinal::Term> ts) {
  Ordinal o;
  o.terms = std::move(ts);
  return o;
}

Ordinal exp_of(const Ordinal::Term& t) { return from_terms(t.exponent); }

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms.push_back(Term{{}, n});
  return o;
}

Ordinal Ordinal::omega() { return power(finite(1), 1); }

Ordinal Ordinal::power(const Ordinal& exp, std::uint64_t coeff) {
  Ordinal o;
  o.terms.push_back(Term{exp.terms, coeff});
  return o;
}

bool Ordinal::is_finite() const {
  return terms.empty() || (terms.size() == 1 && terms[0].exponent.empty());
}

std::uint64_t Ordinal::finite_value() const {
  if (terms.empty()) return 0;
  return terms[0].coeff;
}

Cmp Ordinal::cmp(const Ordinal& a, const Ordinal& b) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    Cmp e = cmp(exp_of(a.terms[i]), exp_of(b.terms[i]));
    if (e != Cmp::EQ) return e;
    if (a.terms[i].coeff != b.terms[i].coeff)
      return a.terms[i].coeff < b.terms[i].coeff ? Cmp::LT : Cmp::GT;
  }
  if (a.terms.size() == b.terms.size()) return Cmp::EQ;
  return a.terms.size() < b.terms.size() ? Cmp::LT : Cmp::GT;
}

bool Ordinal::is_limit() const {
  return !terms.empty() && !terms.back().exponent.empty();
}

Ordinal Ordinal::pred() const {
  if (is_zero() || is_limit())
    throw Error("PredOfLimit", "predecessor of zero or of a limit ordinal");
  Ordinal o = *this;
  if (o.terms.back().coeff > 1)
    o.terms.back().coeff -= 1;
  else
    o.terms.pop_back();
  return o;
}

Ordinal Ordinal::succ() const {
  Ordinal o = *this;
  if (!o.terms.empty() && o.terms.back().exponent.empty())
    o.terms.back().coeff += 1;
  else
    o.terms.push_back(Term{{}, 1});
  return o;
}

Ordinal Ordinal::add(const Ordinal& b) const {
  if (b.is_zero()) return *this;
  Ordinal lead = exp_of(b.terms[0]);
  Ordinal out;
  for (const Term& t : terms) {
    Cmp c = cmp(exp_of(t), lead);
    if (c == Cmp::LT) break;
    if (c == Cmp::EQ) {
      Term merged = t;
      merged.coeff += b.terms[0].coeff;
      out.terms.push_back(merged);
      out.terms.insert(out.terms.end(), b.terms.begin() + 1, b.terms.end());
      return out;
    }
    out.terms.push_back(t);
  }
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

std::uint64_t Ordinal::size() const {
  std::uint64_t s = 1;
  for (const Term& t : terms) s += exp_of(t).size() + t.coeff;
  return s;
}

Ordinal ord_max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

namespace {

// Term sequences (strictly decreasing exponents, each below `bound` when
// bound is given) whose sizes sum to exactly `budget`.
void gen_seqs(std::uint64_t budget, const Ordinal* bound,
              std::vector<Ordinal::Term>& prefix,
              std::vector<std::vector<Ordinal::Term>>& out) {
  if (budget == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::uint64_t es = 1; es + 1 <= budget; ++es) {
    for (const Ordinal& e : ordinals_of_size(es)) {
      if (bound && !(e < *bound)) continue;
      for (std::uint64_t c = 1; es + c <= budget; ++c) {
        prefix.push_back(Ordinal::Term{e.terms, c});
        gen_seqs(budget - es - c, &e, prefix, out);
        prefix.pop_back();
      }
    }
  }
}

}  // namespace

const std::vector<Ordinal>& ordinals_of_size(std::uint64_t s) {
  static std::map<std::uint64_t, std::vector<Ordinal>> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  std::vector<Ordinal> result;
  if (s == 1) {
    result.push_back(Ordinal::zero());
  } else if (s >= 2) {
    std::vector<std::vector<Ordinal::Term>> seqs;
    std::vector<Ordinal::Term> prefix;
    gen_seqs(s - 1, nullptr, prefix, seqs);
    for (auto& ts : seqs)
      if (!ts.empty()) {
        Ordinal o;
        o.terms = std::move(ts);
        result.push_back(o);
      }
    std::sort(result.begin(), result.end(),
              [](const Ordinal& a, const Ordinal& b) { return a < b; });
  }
  return cache.emplace(s, std::move(result)).first->second;
}

std::vector<Ordinal> enumerate_below(const Ordinal& alpha, std::size_t n) {
  std::vector<Ordinal> out;
  for (std::uint64_t s = 1; out.size() < n; ++s) {
    if (s > 256)
      throw Error("EnumerationOverflow", "ordinal enumeration budget exhausted");
    for (const Ordinal& o : ordinals_of_size(s)) {
      if (o < alpha) {
        out.push_back(o);
        if (out.size() == n) break;
      }
    }
  }
  return out;
}

std::vector<TwoSidedIndex> two_sided_enum(const Ordinal& alpha, std::size_t n) {
  if (!alpha.is_limit())
    throw Error("NotLimit", "two-sided index set requires a limit ordinal");
  std::vector<Ordinal> ranks = enumerate_below(alpha, (n + 1) / 2);
  std::vector<TwoSidedIndex> out;
  out.reserve(n);
  for (std::size_t i = 0; out.size() < n; ++i) {
    out.push_back(TwoSidedIndex{false, ranks[i]});
    if (out.size() < n) out.push_back(TwoSidedIndex{true, ranks[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Textual syntax: 0 | nat | w | w^<primary> , optional *nat, joined with +.
// Exponents that are sums must be parenthesized. Non-canonical spellings
// (non-decreasing exponents, zero coefficients) are rejected.

namespace {

struct OrdParser {
  const std::string& s;
  size_t pos = 0;

  explicit OrdParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error("OrdinalSyntaxError",
                msg + " (at position " + std::to_string(pos) + ")");
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::uint64_t nat() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected a natural number");
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > (1ull << 32)) fail("coefficient too large");
      ++pos;
    }
    return v;
  }

  // nat | w[^primary][*nat] | ( ordinal )
  Ordinal primary() {
    skip_ws();
    if (eat('(')) {
      Ordinal o = sum();
      if (!eat(')')) fail("expected ')'");
      return o;
    }
    if (pos < s.size() && (s[pos] == 'w' || s[pos] == 'W')) {
      ++pos;
      Ordinal e = Ordinal::finite(1);
      if (eat('^')) e = primary();
      std::uint64_t c = 1;
      if (eat('*')) {
        c = nat();
        if (c == 0) fail("zero coefficient is not canonical");
      }
      if (e.is_zero()) fail("w^0 is not canonical; write the coefficient");
      return Ordinal::power(e, c);
    }
    return Ordinal::finite(nat());
  }

  Ordinal sum() {
    std::vector<Ordinal> parts;
    parts.push_back(primary());
    while (eat('+')) parts.push_back(primary());
    Ordinal out;
    for (size_t i = 0; i < parts.size(); ++i) {
      const Ordinal& p = parts[i];
      if (p.is_zero()) {
        if (parts.size() > 1) fail("0 may only appear alone");
        continue;
      }
      if (p.terms.size() != 1)
        fail("parenthesized sums may not be summands");
      if (!out.terms.empty()) {
        Cmp c = Ordinal::cmp(exp_of(out.terms.back()), exp_of(p.terms[0]));
        if (c != Cmp::GT) fail("exponents must strictly decrease");
      }
      out.terms.push_back(p.terms[0]);
    }
    return out;
  }

  Ordinal run() {
    Ordinal o = sum();
    skip_ws();
    if (pos != s.size()) fail("trailing input");
    return o;
  }
};

}  // namespace

Ordinal Ordinal::parse(const std::string& text) { return OrdParser(text).run(); }

std::string Ordinal::str() const {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    const Term& t = terms[i];
    Ordinal e = exp_of(t);
    if (e.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += "w";
    if (!(e == finite(1))) {
      out += "^";
      bool atomic = e.is_finite() || (e.terms.size() == 1 && e.terms[0].coeff == 1);
      if (atomic)
        out += e.str();
      else
        out += "(" + e.str() + ")";
    }
    if (t.coeff > 1) out += "*" + std::to_string(t.coeff);
  }
  return out;
}

}  // namespace tameline
