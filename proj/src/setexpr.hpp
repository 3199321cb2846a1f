#pragma once

#include <memory>
#include <string>
#include <vector>

#include "approx.hpp"
#include "ordinal.hpp"

namespace tameline {

// Term algebra of compact subsets of the real line, up to homeomorphism of
// the ambient line. Terms are immutable and shared.
enum class ExprKind {
  Point,      // a single point
  Interval,   // a closed nondegenerate interval
  Cantor,     // a Cantor set
  Cantorval,  // an M-Cantorval
  Union,      // disjoint copies placed left to right, gaps between
  Reflect,    // mirror image
  S2,         // copies of the left child ascending to a central closed
              // interval, copies of the right child descending to it
  Salpha,     // the alpha-iterate S_alpha(child)
  Omega,      // omega copies ascending to a fresh limit point
  OmegaI      // omega copies ascending to the left endpoint of a fresh
              // closed interval (one free endpoint)
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  std::vector<ExprPtr> children;
  Ordinal alpha;  // Salpha only
};

ExprPtr mk_point();
ExprPtr mk_interval();
ExprPtr mk_cantor();
ExprPtr mk_cantorval();
ExprPtr mk_union(std::vector<ExprPtr> children);
ExprPtr mk_reflect(ExprPtr e);
ExprPtr mk_s2(ExprPtr left, ExprPtr right);
ExprPtr mk_s(ExprPtr e);  // sugar: S(e) = S2(e, e)
ExprPtr mk_salpha(Ordinal alpha, ExprPtr e);
ExprPtr mk_omega(ExprPtr e);
ExprPtr mk_omega_i(ExprPtr e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// DSL round trip. print yields the canonical spelling; parse(print(e)) == e.
ExprPtr parse_expr(const std::string& text);
std::string print_expr(const ExprPtr& e);

struct Diagnostic {
  std::string path;  // /-separated child indices from the root
  std::string message;
};

// Structural well-formedness; empty result iff the term satisfies the
// algebra invariants. Never throws.
std::vector<Diagnostic> validate(const ExprPtr& e);

std::string expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const std::string& json_text);

// Stage-n outer approximation of the canonical placement of e in [0,1].
RatApprox denote_sample(const ExprPtr& e, std::uint64_t depth);

}  // namespace tameline
