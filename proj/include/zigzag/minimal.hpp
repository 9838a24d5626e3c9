#pragma once

#include "zigzag/module.hpp"

#include <memory>

namespace zigzag {

// A minimal A-infinity model of a dg module: H(M) with transferred higher
// structure maps, plus a quasi-isomorphism into M. Built order by order in
// the arity, each step an exact linear solve.
struct MinimalModel {
    std::shared_ptr<AInfModule> model; // mu^1 = 0
    HomElement inclusion;              // model -> m, closed, induces the identity on H
};

MinimalModel minimal_model(const AInfModule& m, int arity_cap = -1);

} // namespace zigzag
