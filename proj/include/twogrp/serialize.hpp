#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "twogrp/cochain.hpp"
#include "twogrp/group.hpp"
#include "twogrp/simplicial.hpp"

namespace twogrp {

using Json = nlohmann::json;

// Loaders revalidate everything they read. Malformed documents raise
// ParseError naming the offending field; mathematical violations surface as
// NotAGroup, InvalidFactor, ShapeMismatch and so on.

Json to_json(const AbelianGroup& a);
Json to_json(const AbElement& x);
Json to_json(const FiniteGroup& g);
/// {"group", "coeffs", "degree", "values"} with values nested `degree` deep.
Json to_json(const Cochain& c);
Json to_json(const TruncatedSSet& s);

AbelianGroup coeffs_from_json(const Json& j);
/// Accepts a group object or a spec string.
FiniteGroup group_from_json(const Json& j);
Cochain cochain_from_json(const Json& j);
TruncatedSSet sset_from_json(const Json& j);

/// "2", "2,2", "[2,2]" or "trivial".
AbelianGroup coeffs_from_spec(const std::string& spec);

/// IoError if unreadable; ParseError with line and column on bad JSON.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace twogrp
