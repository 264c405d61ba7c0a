#ifndef KSUB_IO_HPP_
#define KSUB_IO_HPP_

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ksub/core.hpp"
#include "ksub/oracles.hpp"
#include "ksub/problem.hpp"

namespace ksub {

using Json = nlohmann::json;

/// Shortest round-trip decimal form, independent of the C locale.
inline std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string &where, const std::string &what) {
    throw MalformedInput(where + ": " + what);
}

inline const Json &field(const Json &obj, const char *key, const std::string &where) {
    if (!obj.is_object())
        schema_error(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::int64_t integer_field(const Json &obj, const char *key, const std::string &where) {
    const Json &v = field(obj, key, where);
    if (!v.is_number_integer())
        schema_error(where, std::string("field \"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

inline double number_of(const Json &v, const std::string &where) {
    if (!v.is_number())
        schema_error(where, "expected a number");
    return v.get<double>();
}

inline std::string element_id(const Json &v, const std::string &where) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<std::int64_t>());
    schema_error(where, "element ids must be strings or integers");
}

inline std::string tabular_key(std::uint64_t code, int n, int k) {
    std::string key(static_cast<std::size_t>(n), '0');
    for (int a = 0; a < n; ++a) {
        key[static_cast<std::size_t>(a)] = static_cast<char>('0' + code % static_cast<std::uint64_t>(k + 1));
        code /= static_cast<std::uint64_t>(k + 1);
    }
    return key;
}

inline Oracle parse_oracle(const Json &j, int n, int k) {
    const std::string where = "oracle";
    const Json &type = field(j, "type", where);
    if (!type.is_string())
        schema_error(where, "\"type\" must be a string");
    const auto kind = type.get<std::string>();

    if (kind == "coverage") {
        CoveragePayload payload;
        const Json &elements = field(j, "elements", where);
        if (!elements.is_array())
            schema_error(where, "\"elements\" must be an array");
        for (std::size_t e = 0; e < elements.size(); ++e) {
            std::string at = where + ".elements[" + std::to_string(e) + "]";
            double w = number_of(field(elements[e], "weight", at), at + ".weight");
            payload.elements.push_back({element_id(field(elements[e], "id", at), at + ".id"), w});
        }
        const Json &covers = field(j, "covers", where);
        if (!covers.is_array())
            schema_error(where, "\"covers\" must be an array");
        for (std::size_t c = 0; c < covers.size(); ++c) {
            std::string at = where + ".covers[" + std::to_string(c) + "]";
            CoveragePayload::Cover cover{ItemId{static_cast<int>(integer_field(covers[c], "item", at))},
                                         Dimension{static_cast<int>(integer_field(covers[c], "dim", at))},
                                         {}};
            const Json &ids = field(covers[c], "elements", at);
            if (!ids.is_array())
                schema_error(at, "\"elements\" must be an array");
            for (const auto &id : ids)
                cover.elements.push_back(element_id(id, at + ".elements"));
            payload.covers.push_back(std::move(cover));
        }
        return CoverageOracle(n, k, std::move(payload));
    }

    if (kind == "separable_sum") {
        SeparableSumPayload payload;
        const Json &dims = field(j, "dims", where);
        if (!dims.is_array())
            schema_error(where, "\"dims\" must be an array");
        for (std::size_t i = 0; i < dims.size(); ++i) {
            std::string at = where + ".dims[" + std::to_string(i) + "]";
            SeparableSumPayload::Term term;
            term.cap = number_of(field(dims[i], "cap", at), at + ".cap");
            const Json &masses = field(dims[i], "masses", at);
            if (!masses.is_array())
                schema_error(at, "\"masses\" must be an array");
            for (const auto &m : masses)
                term.masses.push_back(number_of(m, at + ".masses"));
            payload.dims.push_back(std::move(term));
        }
        return SeparableSumOracle(n, k, std::move(payload));
    }

    if (kind == "tabular") {
        if (k > 9)
            schema_error(where, "tabular oracles support k <= 9 (one decimal digit per item)");
        StateSpace space(n, k);
        auto size = space.require_within(StateSpace::kDefaultCap);
        const Json &values = field(j, "values", where);
        if (!values.is_object())
            schema_error(where, "\"values\" must be an object keyed by digit strings");
        std::vector<double> table(size, 0.0);
        std::vector<bool> seen(size, false);
        for (const auto &[key, v] : values.items()) {
            if (static_cast<int>(key.size()) != n)
                schema_error(where + ".values", "key \"" + key + "\" must have exactly n=" + std::to_string(n) + " digits");
            std::uint64_t code = 0;
            for (int a = n; a >= 1; --a) {
                char ch = key[static_cast<std::size_t>(a - 1)];
                if (ch < '0' || ch > static_cast<char>('0' + k))
                    schema_error(where + ".values", "key \"" + key + "\" has a digit outside 0.." + std::to_string(k));
                code = code * static_cast<std::uint64_t>(k + 1) + static_cast<std::uint64_t>(ch - '0');
            }
            table[code] = number_of(v, where + ".values[\"" + key + "\"]");
            seen[code] = true;
        }
        for (std::uint64_t c = 0; c < size; ++c)
            if (!seen[c])
                schema_error(where + ".values", "missing key \"" + tabular_key(c, n, k) + "\"");
        return TabularOracle(n, k, std::move(table));
    }

    schema_error(where, "unknown oracle type \"" + kind + "\"");
}

} // namespace detail

/// Parses an instance document. JSON syntax errors are reported with line
/// and column; schema errors name the offending field.
inline Problem parse_problem(std::string_view text, std::string name) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        std::size_t line = 1;
        std::size_t col = 1;
        std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw MalformedInput(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }

    const std::string where = name;
    std::int64_t k = detail::integer_field(j, "k", where);
    if (k < 1 || k > 1'000'000)
        detail::schema_error(where, "k must be a positive integer");
    std::int64_t budget = detail::integer_field(j, "budget", where);

    const Json &items = detail::field(j, "items", where);
    if (!items.is_array())
        detail::schema_error(where, "\"items\" must be an array");
    const auto n = items.size();
    std::vector<std::int64_t> costs(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::string at = where + ": items[" + std::to_string(idx) + "]";
        std::int64_t id = detail::integer_field(items[idx], "id", at);
        if (id < 1 || static_cast<std::uint64_t>(id) > n)
            detail::schema_error(at, "id " + std::to_string(id) + " is outside 1.." + std::to_string(n));
        if (seen[static_cast<std::size_t>(id - 1)])
            detail::schema_error(at, "id " + std::to_string(id) + " appears twice");
        seen[static_cast<std::size_t>(id - 1)] = true;
        costs[static_cast<std::size_t>(id - 1)] = detail::integer_field(items[idx], "cost", at);
    }

    Instance inst(static_cast<int>(k), std::move(costs), budget);
    Oracle oracle = detail::parse_oracle(detail::field(j, "oracle", where), inst.n(), inst.k());
    return {std::move(name), std::move(inst), std::move(oracle)};
}

inline Problem read_problem(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MalformedInput("cannot open instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), path.stem().string());
}

inline Json to_json(const Oracle &oracle) {
    Json j;
    if (auto *c = std::get_if<CoverageOracle>(&oracle.variant())) {
        j["type"] = "coverage";
        Json elements = Json::array();
        for (const auto &e : c->payload().elements)
            elements.push_back({{"id", e.id}, {"weight", e.weight}});
        Json covers = Json::array();
        for (const auto &cv : c->payload().covers)
            covers.push_back({{"item", cv.item.value}, {"dim", cv.dim.value}, {"elements", cv.elements}});
        j["elements"] = std::move(elements);
        j["covers"] = std::move(covers);
    } else if (auto *s = std::get_if<SeparableSumOracle>(&oracle.variant())) {
        j["type"] = "separable_sum";
        Json dims = Json::array();
        for (const auto &t : s->payload().dims)
            dims.push_back({{"cap", t.cap}, {"masses", t.masses}});
        j["dims"] = std::move(dims);
    } else {
        const auto &t = std::get<TabularOracle>(oracle.variant());
        j["type"] = "tabular";
        Json values = Json::object();
        for (std::uint64_t c = 0; c < t.values().size(); ++c)
            values[detail::tabular_key(c, t.items(), t.dims())] = t.values()[c];
        j["values"] = std::move(values);
    }
    return j;
}

inline Json to_json(const Problem &p) {
    Json items = Json::array();
    for (int a = 1; a <= p.instance.n(); ++a)
        items.push_back({{"id", a}, {"cost", p.instance.cost_of(ItemId{a})}});
    return {{"k", p.instance.k()}, {"budget", p.instance.budget()}, {"items", std::move(items)},
            {"oracle", to_json(p.oracle)}};
}

inline std::string dump_problem(const Problem &p) { return to_json(p).dump(2) + "\n"; }

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw MalformedInput("cannot write " + path.string());
    out << text;
}

inline Json to_json(const Assignment &s) {
    Json out = Json::array();
    for (const auto &p : s)
        out.push_back({p.item.value, p.dim.value});
    return out;
}

inline Json to_json(const SolveReport &r) {
    Json j{{"algorithm", std::string(to_string(r.algorithm))},
           {"solution", to_json(r.solution)},
           {"value", r.value},
           {"evaluations", r.evaluations}};
    j["optimum"] = r.optimum ? Json(*r.optimum) : Json(nullptr);
    j["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
    return j;
}

/// One row of a report CSV.
struct ReportRow {
    std::string instance;
    SolveReport report;
    int n = 0;
    int k = 0;
    std::int64_t budget = 0;
    std::optional<double> millis; // left empty unless timing was requested
};

inline constexpr std::string_view kCsvHeader = "instance,algorithm,n,k,budget,value,optimum,ratio,evaluations,millis";

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const std::vector<ReportRow> &rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto &row : rows) {
        const auto &r = row.report;
        out += csv_field(row.instance) + ',' + std::string(to_string(r.algorithm)) + ',' + std::to_string(row.n) + ',' +
               std::to_string(row.k) + ',' + std::to_string(row.budget) + ',' + format_number(r.value) + ',' +
               (r.optimum ? format_number(*r.optimum) : "") + ',' + (r.ratio ? format_number(*r.ratio) : "") + ',' +
               std::to_string(r.evaluations) + ',' + (row.millis ? format_number(*row.millis) : "") + '\n';
    }
    return out;
}

} // namespace ksub

#endif // KSUB_IO_HPP_
