#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dimtower/families.hpp"
#include "dimtower/localorder.hpp"
#include "dimtower/quadfield.hpp"
#include "dimtower/scan.hpp"
#include "dimtower/tower.hpp"

namespace dimtower {

using Json = nlohmann::ordered_json;

// Arbitrary-precision values are written as decimal strings so that no
// reader rounds them through a double; machine-width fields are numbers.

Json to_json(const QuadInt &x);
Json to_json(const UnitRecord &u);
Json to_json(const TowerEntry &e);
Json to_json(const Factorization &f);
Json to_json(const WReport &w);
Json to_json(const FamilyCertificate &c);
Json to_json(const EquivalenceRow &row);

QuadInt quad_from_json(const Json &j);
Factorization factorization_from_json(const Json &j);
WReport wreport_from_json(const Json &j);
FamilyCertificate certificate_from_json(const Json &j);

/// One certificate per line, no whitespace, fixed field order, "\n" terminated.
std::string to_jsonl(const FamilyCertificate &c);

/// CSV with header "ell,dim,factorization".
std::string tower_csv(const std::vector<TowerEntry> &entries);

struct VerifyLine
{
    std::size_t line = 0;
    bool pass = false;
    std::string message;
};

/// Re-checks every line of a certificate file: parse, rebuild from the
/// parameters, and compare the re-serialized form byte for byte.
std::vector<VerifyLine> verify_jsonl(const std::string &content);

} // namespace dimtower
