#pragma once

#include "upcap/convex_body.hpp"
#include "upcap/finite_space.hpp"
#include "upcap/priors.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <memory>
#include <string>

// JSON schemas (documented in the README):
//   body:   {"kind":"interval","lo":[...],"hi":[...]}
//           {"kind":"ball","center":[...],"radius":r}
//           {"kind":"polytope","vertices":[[...],...]}
//   space:  {"name":...,"d":...,"supports":[[[x,..],..],..],
//            "extremes":[[[p,..],..],..],"expect_independent":bool}
//   family: {"kind":"uniform_shift","a":..,"r":..,"n":..}
//           {"kind":"ball_shift","r":..,"n":..,"shift_set":<body>}
//           {"kind":"discrete","space":"path/to/space.json"}

namespace upcap {

nlohmann::json body_to_json(const ConvexBody& body);
ConvexBody body_from_json(const nlohmann::json& j);

nlohmann::json space_to_json(const FiniteSpace& space);
std::shared_ptr<FiniteSpace> space_from_json(const nlohmann::json& j);

// A shipped space file may carry an "expect_independent" flag consumed by
// the oracle runner; absent means true.
struct SpaceFixture {
    std::shared_ptr<FiniteSpace> space;
    bool expect_independent = true;
};
SpaceFixture load_space_file(const std::filesystem::path& path);

// `base_dir` resolves relative space paths in discrete family specs.
PriorFamily family_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

}  // namespace upcap
