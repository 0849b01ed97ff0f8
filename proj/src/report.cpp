#include "k3w/report.hpp"

#include <iomanip>
#include <sstream>

namespace k3w {

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    throw Error(Errc::InvalidArgument, "unknown format '" + name + "'");
}

nlohmann::json integer_to_json(const Integer& n) {
    if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
    return to_string(n);
}

Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw Error(Errc::InvalidArgument, "expected an integer in JSON, got " + j.dump());
}

nlohmann::json witness_to_json(const Witness& w) {
    using nlohmann::json;
    const LatticeConfig& cfg = w.D.lattice();
    const BbValues bb = bb_values(w);
    const Integer residual = [&] {
        const Integer u = w.query.lead() * w.x + 2 * (w.query.g - 1);
        const Integer v = w.query.lead() * w.y;
        return Integer(u * u - w.d * v * v - pell_rhs(w.query));
    }();
    json checks = json::object();
    for (const auto& c : w.report.checks) checks[c.name] = c.passed;
    return json{
        {"d", integer_to_json(w.d)},
        {"mu", w.mu},
        {"sign", sign_name(w.query.sign)},
        {"x", integer_to_json(w.x)},
        {"y", integer_to_json(w.y)},
        {"D", {{"x", integer_to_json(w.D.x())}, {"y", integer_to_json(w.D.y())}}},
        {"F", {{"x", integer_to_json(w.F.x())}, {"y", integer_to_json(w.F.y())}}},
        {"F2", integer_to_json(inner(w.F, w.F))},
        {"FdotH", integer_to_json(inner(w.F, cfg.H()))},
        {"DdotH", integer_to_json(dot_H(w.D))},
        {"x_threshold", integer_to_json(w.x_threshold)},
        {"pell_residual", integer_to_json(residual)},
        {"bb", {{"eps", integer_to_json(bb.eps)}, {"q", integer_to_json(bb.q)}, {"b", integer_to_json(bb.b)}}},
        {"checks", checks},
    };
}

nlohmann::json witnesses_document(const DocumentQuery& q, const std::optional<Witness>& lattice_from,
                                  const std::vector<Witness>& ws) {
    using nlohmann::json;
    json doc;
    doc["query"] = json{{"g", q.g}, {"r", q.r}, {"s", q.s}, {"sign", q.sign}, {"tilde", q.tilde}};
    if (lattice_from) {
        doc["lattice"] = json{{"d", integer_to_json(lattice_from->d)}, {"mu", lattice_from->mu}};
    } else {
        doc["lattice"] = nullptr;
    }
    doc["witnesses"] = json::array();
    for (const auto& w : ws) doc["witnesses"].push_back(witness_to_json(w));
    return doc;
}

DocumentQuery query_from_json(const nlohmann::json& j) {
    return DocumentQuery{j.at("g").get<std::int64_t>(), j.at("r").get<std::int64_t>(),
                         j.at("s").get<std::int64_t>(), j.at("sign").get<std::string>(),
                         j.at("tilde").get<bool>()};
}

Witness witness_from_json(const DocumentQuery& q, const nlohmann::json& entry) {
    const std::string sign = entry.at("sign").get<std::string>();
    if (sign != "plus" && sign != "minus") {
        throw Error(Errc::InvalidArgument, "witness sign must be plus or minus");
    }
    FamilyQuery fq{q.g, q.r, q.s, sign == "plus" ? Sign::Plus : Sign::Minus, q.tilde};
    return make_witness(fq, integer_from_json(entry.at("d")), entry.at("mu").get<std::int64_t>(),
                        integer_from_json(entry.at("x")), integer_from_json(entry.at("y")),
                        integer_from_json(entry.at("x_threshold")));
}

std::string witnesses_csv(const std::vector<Witness>& ws) {
    std::ostringstream os;
    os << "d,mu,sign,x,y,D_x,D_y,F_x,F_y,F2,FdotH,DdotH,x_threshold,pell_residual,bb_eps,bb_q,bb_b";
    std::vector<std::string> names;
    if (!ws.empty()) {
        for (const auto& c : ws.front().report.checks) names.push_back(c.name);
    }
    for (const auto& n : names) os << ",check_" << n;
    os << "\n";
    for (const auto& w : ws) {
        const nlohmann::json j = witness_to_json(w);
        auto s = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        os << s(j["d"]) << ',' << w.mu << ',' << sign_name(w.query.sign) << ',' << s(j["x"]) << ','
           << s(j["y"]) << ',' << s(j["D"]["x"]) << ',' << s(j["D"]["y"]) << ',' << s(j["F"]["x"]) << ','
           << s(j["F"]["y"]) << ',' << s(j["F2"]) << ',' << s(j["FdotH"]) << ',' << s(j["DdotH"]) << ','
           << s(j["x_threshold"]) << ',' << s(j["pell_residual"]) << ',' << s(j["bb"]["eps"]) << ','
           << s(j["bb"]["q"]) << ',' << s(j["bb"]["b"]);
        for (const auto& n : names) {
            const Check* c = w.report.find(n);
            os << ',' << (c && c->passed ? "true" : "false");
        }
        os << "\n";
    }
    return os.str();
}

std::string abbreviate(const Integer& n, std::size_t max_digits) {
    std::string s = to_string(n);
    const bool neg = !s.empty() && s[0] == '-';
    const std::size_t digits = s.size() - (neg ? 1 : 0);
    if (digits <= max_digits) return s;
    const std::size_t keep = max_digits / 2;
    const std::string body = s.substr(neg ? 1 : 0);
    return (neg ? "-" : "") + body.substr(0, keep) + "..." + body.substr(body.size() - keep) + " (" +
           std::to_string(digits) + " digits)";
}

std::string witnesses_table(const std::vector<Witness>& ws) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "d" << std::setw(5) << "mu" << std::setw(7) << "sign"
       << std::setw(6) << "F^2" << std::setw(6) << "q" << std::setw(8) << "checks"
       << "x / y\n";
    for (const auto& w : ws) {
        const BbValues bb = bb_values(w);
        const auto failed = w.report.failed();
        std::string status = failed.empty() ? "ok" : "FAIL";
        os << std::left << std::setw(8) << to_string(w.d) << std::setw(5) << w.mu << std::setw(7)
           << sign_name(w.query.sign) << std::setw(6) << to_string(inner(w.F, w.F)) << std::setw(6)
           << to_string(bb.q) << std::setw(8) << status << abbreviate(w.x) << " / " << abbreviate(w.y);
        for (const auto& f : failed) os << " !" << f;
        os << "\n";
    }
    return os.str();
}

}  // namespace k3w
