#pragma once

// The fibrewise dual of a fibration: arrows are equivalence classes of vh
// spans, composed by span interpolation through the cleavage. The dual is
// materialized as an explicit FiniteCategory so every analysis operation
// applies to it unchanged.

#include <map>
#include <memory>

#include "fibcat/fib.hpp"

namespace fibcat {

// A span with vertical leg v: apex -> X and Cartesian leg h: apex -> Y,
// representing an arrow X -> Y of the dual over pi(h).
struct VhSpan {
  ObjId apex = kNone;
  ArrowId vertical = kNone;
  ArrowId horizontal = kNone;
  const CatFunctor* pi = nullptr;

  ObjId src() const { return pi->source->cod(vertical); }
  ObjId tgt() const { return pi->source->cod(horizontal); }
  ArrowId base() const { return pi->arr_map[horizontal]; }
};

// The unique vertical iso s: apex(b) -> apex(a) with s.v_a = v_b and
// s.h_a = h_b, or nullopt when the spans are inequivalent.
std::optional<ArrowId> spans_equivalent(const VhSpan& a, const VhSpan& b);

struct ComorphismClass {
  ObjId src = kNone;
  ObjId tgt = kNone;
  ArrowId base_arrow = kNone;
  std::vector<VhSpan> representatives;  // all of them, (vertical, horizontal) order
  int canonical = -1;                   // the one whose h-part is the cleavage choice
};

// Membership test against the class's first representative.
bool class_contains(const ComorphismClass& cls, const VhSpan& span);

// Materialize the full equivalence class of one span.
ComorphismClass span_class(const CatFunctor& pi, const Cleavage& cleavage,
                           const VhSpan& span);

// Standard span composition (interpolate k as the cleavage lift of pi(h1)
// with codomain apex(s2), close the square with the unique vertical w, return
// the class of (w.v1, k.h2)).
ComorphismClass compose_spans(const CatFunctor& pi, const Cleavage& cleavage,
                              const VhSpan& s1, const VhSpan& s2);

struct DualFibration {
  std::unique_ptr<FiniteCategory> category;  // X*
  CatFunctor projection;                     // pi*: X* -> B; source is category.get()
  const CatFunctor* pi = nullptr;            // the original fibration
  std::vector<ComorphismClass> classes;      // per dual arrow

  // (vertical, horizontal) of any representative -> dual arrow index.
  std::map<std::pair<ArrowId, ArrowId>, int> span_index;

  int arrow_of_span(ArrowId v, ArrowId h) const {
    auto it = span_index.find({v, h});
    return it == span_index.end() ? kNone : it->second;
  }
};

// Build X* over the same base. Dual arrow indices are assigned by sorting
// canonical representatives by (base arrow, source, target, vertical index).
DualFibration build_dual(const CatFunctor& pi, const Cleavage& cleavage);

enum class DualArrowClass { vertical, cartesian, both, neither };

// Representative-form classification: vertical iff some representative has an
// identity h-part, Cartesian iff some representative has an identity v-part.
DualArrowClass classify_dual_arrow(const DualFibration& dual, int g);

struct DoubleDual {
  DualFibration dual;         // X*
  DualFibration double_dual;  // X**
  CatFunctor y;               // X -> X**, glued from y(v)=((v,1),1), y(h)=(1,(1,h))
  ValidationReport verification;
};

DoubleDual double_dual_iso(const CatFunctor& pi, const Cleavage& cleavage);

}  // namespace fibcat
