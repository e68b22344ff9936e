#include "qcas/tableio.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace qcas {

namespace {

using nlohmann::json;

std::vector<const NVar*> sorted_keys(const SolutionTable& t, const ConeSpec& cone) {
    std::vector<const NVar*> keys;
    for (const auto& [v, val] : t.values) keys.push_back(&v);
    auto omega = [&](const IVec& beta) {
        Rat acc(0);
        for (size_t i = 0; i < beta.size() && i < cone.omega.size(); ++i)
            acc += to_rat(cone.omega[i]) * to_rat(beta[i]);
        return acc;
    };
    std::stable_sort(keys.begin(), keys.end(), [&](const NVar* a, const NVar* b) {
        Rat wa = omega(a->beta), wb = omega(b->beta);
        if (wa != wb) return wa < wb;
        if (a->beta != b->beta) return a->beta < b->beta;
        return a->d < b->d;
    });
    return keys;
}

json nvar_to_obj(const NVar& v) {
    return json{{"beta", v.beta}, {"d", v.d}};
}

NVar nvar_from_obj(const json& o) {
    if (!o.is_object() || !o.contains("beta") || !o.contains("d"))
        throw QcasError("parse", "table variable needs beta and d arrays");
    NVar v;
    for (const auto& x : o.at("beta")) {
        if (!x.is_number_integer()) throw QcasError("parse", "beta coordinates must be integers");
        v.beta.push_back(x.get<long long>());
    }
    for (const auto& x : o.at("d")) {
        if (!x.is_number_integer()) throw QcasError("parse", "d coordinates must be integers");
        v.d.push_back(x.get<long long>());
    }
    return v;
}

IVec ivec_from_csv(const std::string& s, int line) {
    IVec v;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoll(cur, &used));
            if (used != cur.size()) throw std::invalid_argument("");
        } catch (...) {
            throw QcasError("parse", "csv line " + std::to_string(line) + ": bad integer '" + cur + "'");
        }
    }
    if (v.empty()) throw QcasError("parse", "csv line " + std::to_string(line) + ": empty vector");
    return v;
}

}  // namespace

std::string table_to_json(const TableFile& tf, const ConeSpec& cone) {
    json out;
    out["algebra"] = tf.algebra;
    out["status"] = tf.table.status;
    json entries = json::array();
    for (const NVar* v : sorted_keys(tf.table, cone)) {
        json e = nvar_to_obj(*v);
        e["value"] = rat_to_string(tf.table.values.at(*v));
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    json free = json::array();
    for (const auto& v : tf.table.free_vars) free.push_back(nvar_to_obj(v));
    out["free"] = std::move(free);
    json pins = json::array();
    for (const auto& v : tf.table.pins) pins.push_back(nvar_to_obj(v));
    out["pins"] = std::move(pins);
    return out.dump();
}

TableFile table_from_json(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const std::exception& e) {
        throw QcasError("parse", std::string("table is not valid json: ") + e.what());
    }
    if (!in.is_object() || !in.contains("entries") || !in.at("entries").is_array())
        throw QcasError("parse", "table json needs an entries array");
    TableFile tf;
    tf.algebra = in.value("algebra", std::string());
    tf.table.status = in.value("status", std::string("imported"));
    for (const auto& e : in.at("entries")) {
        NVar v = nvar_from_obj(e);
        if (!e.contains("value") || !e.at("value").is_string())
            throw QcasError("parse", "table entry needs a string value for " + nvar_to_string(v));
        Rat val = rat_from_string(e.at("value").get<std::string>());
        if (!tf.table.values.emplace(v, val).second)
            throw validation_error("duplicate table entry " + nvar_to_string(v));
    }
    if (in.contains("free"))
        for (const auto& e : in.at("free")) tf.table.free_vars.push_back(nvar_from_obj(e));
    if (in.contains("pins"))
        for (const auto& e : in.at("pins")) tf.table.pins.insert(nvar_from_obj(e));
    return tf;
}

std::string table_to_csv(const TableFile& tf, const ConeSpec& cone) {
    std::ostringstream os;
    os << "beta;d;value\n";
    for (const NVar* v : sorted_keys(tf.table, cone)) {
        for (size_t i = 0; i < v->beta.size(); ++i) os << (i ? "," : "") << v->beta[i];
        os << ";";
        for (size_t i = 0; i < v->d.size(); ++i) os << (i ? "," : "") << v->d[i];
        os << ";" << rat_to_string(tf.table.values.at(*v)) << "\n";
    }
    return os.str();
}

TableFile table_from_csv(const std::string& text) {
    TableFile tf;
    tf.table.status = "imported";
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (ln == 1) {
            if (line != "beta;d;value")
                throw QcasError("parse", "csv header must be 'beta;d;value'");
            continue;
        }
        size_t p1 = line.find(';');
        size_t p2 = p1 == std::string::npos ? std::string::npos : line.find(';', p1 + 1);
        if (p2 == std::string::npos)
            throw QcasError("parse", "csv line " + std::to_string(ln) + ": expected two ';'");
        NVar v;
        v.beta = ivec_from_csv(line.substr(0, p1), ln);
        v.d = ivec_from_csv(line.substr(p1 + 1, p2 - p1 - 1), ln);
        Rat val = rat_from_string(line.substr(p2 + 1));
        if (!tf.table.values.emplace(v, val).second)
            throw validation_error("duplicate table entry " + nvar_to_string(v));
    }
    return tf;
}

std::string export_table(const TableFile& tf, const ConeSpec& cone, const std::string& format) {
    if (format == "json") return table_to_json(tf, cone);
    if (format == "csv") return table_to_csv(tf, cone);
    throw usage_error("unknown table format: " + format);
}

TableFile import_table(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? table_from_json(text) : table_from_csv(text);
    }
    throw QcasError("parse", "empty table file");
}

void validate_table_entries(const Bundle& b, const SolutionTable& table) {
    for (const auto& [v, val] : table.values) {
        if ((int)v.beta.size() != b.cone.dim)
            throw validation_error("entry " + nvar_to_string(v) + " has the wrong class rank");
        bool zero = true;
        for (long long x : v.beta)
            if (x) zero = false;
        if (zero || !cone_contains(b.cone, v.beta))
            throw validation_error("entry " + nvar_to_string(v) + " lies outside the curve cone");
        if ((int)v.d.size() != b.alg.higher_count())
            throw validation_error("entry " + nvar_to_string(v) + " has the wrong insertion rank");
        for (long long x : v.d)
            if (x < 0) throw validation_error("entry " + nvar_to_string(v) + " has a negative insertion");
        if (!admissible(b, v))
            throw validation_error("entry " + nvar_to_string(v) + " fails the dimension filter");
    }
}

}  // namespace qcas
