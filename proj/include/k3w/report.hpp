#pragma once

// Machine-readable and human-readable output for witnesses.
//
// JSON document:
//   {"query": {"g","r","s","sign","tilde"},
//    "lattice": {"d","mu"} | null,
//    "witnesses": [{"d","mu","sign","x","y","D":{"x","y"},"F":{"x","y"},
//                   "F2","FdotH","DdotH","x_threshold","pell_residual",
//                   "bb":{"eps","q","b"},"checks":{name: bool}}]}
// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3w/family.hpp"

namespace k3w {

enum class OutputFormat { Table, Json, Csv };

OutputFormat parse_format(const std::string& name);

nlohmann::json integer_to_json(const Integer& n);
Integer integer_from_json(const nlohmann::json& j);

struct DocumentQuery {
    std::int64_t g;
    std::int64_t r;
    std::int64_t s;
    std::string sign;  // "plus", "minus" or "both"
    bool tilde;
};

nlohmann::json witness_to_json(const Witness& w);
nlohmann::json witnesses_document(const DocumentQuery& q, const std::optional<Witness>& lattice_from,
                                  const std::vector<Witness>& ws);

// Rebuilds a witness from its JSON entry and re-verifies it.
Witness witness_from_json(const DocumentQuery& q, const nlohmann::json& entry);
DocumentQuery query_from_json(const nlohmann::json& j);

std::string witnesses_csv(const std::vector<Witness>& ws);
std::string witnesses_table(const std::vector<Witness>& ws);

// Shortens long integers for tables: 12345...67890 (123 digits).
std::string abbreviate(const Integer& n, std::size_t max_digits = 24);

}  // namespace k3w
