#pragma once

// Random fibration generator for the property suites. Fibrations are built by
// the Grothendieck construction: a free base category on a small DAG, a small
// category per base object, and a functor between fibers per generating edge
// (extended to paths by composition, so strictness is automatic). The result
// is a fibration by construction, so property suites never vacuously skip;
// the chosen Cartesian lifts are the (alpha, identity) arrows.

#include <memory>
#include <random>

#include "fibcat/core.hpp"

namespace fibcat {

struct GeneratedFibration {
  std::unique_ptr<FiniteCategory> base;
  std::unique_ptr<FiniteCategory> total;
  CatFunctor pi;
};

// Base <= 3 objects / <= 6 arrows, total <= 40 arrows. Fiber shapes mix
// random preorders (sometimes with isomorphism cycles, so cleavages are not
// unique), a two-element group, a walking idempotent and a parallel pair.
GeneratedFibration generate_fibration(std::mt19937_64& rng);

// Every functor C -> D, by backtracking over object and arrow assignments.
// Intended for small categories only.
std::vector<CatFunctor> all_functors(const FiniteCategory& C, const FiniteCategory& D);

// A category isomorphic to `cat` under random index permutations, plus the
// witnessing iso functor cat -> relabeled.
struct RelabeledCategory {
  std::unique_ptr<FiniteCategory> cat;
  CatFunctor iso;  // source must outlive this struct
};

RelabeledCategory random_relabel(const FiniteCategory& cat, std::mt19937_64& rng);

}  // namespace fibcat
