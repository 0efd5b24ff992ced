#pragma once

#include "boxes.hpp"
#include "engine.hpp"
#include "numeric.hpp"
#include "partition.hpp"
#include "sequence.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ohara {

using json = nlohmann::ordered_json;

/* Numbers travel as decimal strings (values routinely exceed 2^64);
 * readers also accept plain JSON integers for hand-written files. */
inline ZZ zz_of_json(const json &j, const char *what)
{
        if (j.is_string())
                return parse_zz(j.get<std::string>());
        if (j.is_number_integer())
                return ZZ(j.get<long long>());
        refuse(std::string(what) + ": expected an integer or decimal string");
}

inline bound bound_of_json(const json &j, const char *what)
{
        if (j.is_null())
                return bound::inf();
        if (j.is_string())
                return bound::parse(j.get<std::string>());
        if (j.is_number_integer())
                return bound(ZZ(j.get<long long>()));
        refuse(std::string(what) + ": expected an integer, \"inf\" or null");
}

inline QQ qq_of_json(const json &j, const char *what)
{
        if (j.is_string())
                return parse_frac(j.get<std::string>());
        if (j.is_number_integer())
                return QQ(j.get<long long>());
        refuse(std::string(what) + ": expected a \"p/q\" string");
}

inline json json_of_partition(const partition &lam)
{
        json j = json::object();
        for (const auto &[p, m] : lam.mults())
                j[p.str()] = m.str();
        return j;
}

inline partition partition_of_json(const json &j)
{
        if (!j.is_object())
                refuse("partition: expected an object of part -> "
                       "multiplicity");
        partition lam;
        for (const auto &[key, val] : j.items()) {
                ZZ part = parse_zz(key);
                ZZ mult = zz_of_json(val, "multiplicity");
                if (mult < 1)
                        refuse("multiplicities must be >= 1");
                if (lam.count(part) != 0)
                        refuse("repeated part " + key);
                lam.set(part, mult);
        }
        return lam;
}

inline json json_of_spec(const sequence_spec &spec)
{
        json j;
        j["rule"] = rule_name(spec.kind());
        if (spec.kind() == rule_kind::multiply)
                j["d"] = spec.d().str();
        if (spec.kind() == rule_kind::table) {
                json tab = json::array();
                for (const auto &[i, e] : spec.table()) {
                        json row;
                        row["i"] = i.str();
                        row["a"] = e.a.str();
                        row["b"] = e.b.str();
                        if (e.phi)
                                row["phi"] = e.phi->str();
                        tab.push_back(std::move(row));
                }
                j["table"] = std::move(tab);
        }
        j["horizon"] = spec.horizon().str();
        return j;
}

inline sequence_spec spec_of_json(const json &j)
{
        if (!j.is_object() || !j.contains("rule"))
                refuse("spec: expected an object with a \"rule\" field");
        std::string rule = j.at("rule").get<std::string>();
        ZZ horizon = j.contains("horizon")
                         ? zz_of_json(j.at("horizon"), "horizon")
                         : ZZ(10000);
        if (rule == "finite_table") {
                std::vector<table_entry> tab;
                if (!j.contains("table") || !j.at("table").is_array())
                        refuse("finite_table spec needs a \"table\" array");
                for (const json &row : j.at("table")) {
                        table_entry e;
                        e.i = zz_of_json(row.at("i"), "table index");
                        e.a = bound_of_json(row.at("a"), "a bound");
                        e.b = bound_of_json(row.at("b"), "b bound");
                        if (row.contains("phi") && !row.at("phi").is_null())
                                e.phi = zz_of_json(row.at("phi"), "phi");
                        tab.push_back(std::move(e));
                }
                return sequence_spec(rule_kind::table, horizon, 2,
                                     std::move(tab));
        }
        if (rule == "multiply") {
                ZZ d = j.contains("d") ? zz_of_json(j.at("d"), "d") : ZZ(2);
                return sequence_spec(rule_kind::multiply, horizon, d);
        }
        return make_builtin(rule, horizon);
}

inline json json_of_trace(const trace &tr)
{
        json j;
        j["initial"] = json_of_partition(tr.initial);
        j["final"] = json_of_partition(tr.final);
        json steps = json::array();
        for (const trace_step &st : tr.steps) {
                json row;
                row["part"] = st.part.str();
                row["reps"] = st.reps.str();
                steps.push_back(std::move(row));
        }
        j["steps"] = std::move(steps);
        j["step_count"] = tr.step_count.str();
        j["firings"] = tr.firings.str();
        return j;
}

inline json json_of_qvec(const qvec &v)
{
        json j = json::array();
        for (const QQ &x : v)
                j.push_back(frac_str(x));
        return j;
}

inline qvec qvec_of_json(const json &j, const char *what)
{
        if (!j.is_array())
                refuse(std::string(what) + ": expected an array");
        qvec v;
        for (const json &x : j)
                v.push_back(qq_of_json(x, what));
        return v;
}

inline json json_of_decomposition(const decomposition &d)
{
        json j;
        j["functional"] = json_of_qvec(d.functional);
        j["source"] = json_of_qvec(d.source.sides);
        j["target"] = json_of_qvec(d.target.sides);
        json ps = json::array();
        for (const piece &p : d.pieces) {
                json row;
                row["anchor"] = json_of_qvec(p.anchor);
                row["sides"] = json_of_qvec(p.sides);
                row["translation"] = json_of_qvec(p.translation);
                ps.push_back(std::move(row));
        }
        j["pieces"] = std::move(ps);
        return j;
}

inline decomposition decomposition_of_json(const json &j)
{
        decomposition d;
        d.functional = qvec_of_json(j.at("functional"), "functional");
        d.source = box(qvec_of_json(j.at("source"), "source"));
        d.target = box(qvec_of_json(j.at("target"), "target"));
        if (!j.at("pieces").is_array())
                refuse("pieces: expected an array");
        for (const json &row : j.at("pieces")) {
                piece p;
                p.anchor = qvec_of_json(row.at("anchor"), "anchor");
                p.sides = qvec_of_json(row.at("sides"), "sides");
                p.translation =
                    qvec_of_json(row.at("translation"), "translation");
                d.pieces.push_back(std::move(p));
        }
        return d;
}

inline json parse_json_text(const std::string &text, const std::string &what)
{
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded())
                refuse("invalid JSON in " + what);
        return j;
}

inline json load_json_file(const std::string &path)
{
        std::ifstream in(path);
        if (!in)
                refuse("cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_json_text(buf.str(), path);
}

inline void write_text_file(const std::string &path, const std::string &text)
{
        std::ofstream out(path, std::ios::binary);
        if (!out)
                refuse("cannot write " + path);
        out << text;
        if (!out)
                refuse("write to " + path + " failed");
}

/* Two-panel SVG of a planar congruence: the source box with its pieces
 * on the left, the translated pieces inside the target box on the
 * right.  All coordinates are scaled by the common denominator so the
 * output contains only integers and renders identically everywhere.
 * Piece colour is a hash of the translation vector, so equal
 * translations share a colour across the two panels. */
inline uint64_t fnv1a(const std::string &s)
{
        uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s) {
                h ^= c;
                h *= 1099511628211ULL;
        }
        return h;
}

inline std::string svg_of_decomposition(const decomposition &d)
{
        if (d.functional.size() != 2)
                refuse("SVG rendering is two-dimensional only");
        ZZ den = 1;
        auto absorb = [&den](const qvec &v) {
                for (const QQ &x : v)
                        den = lcm_zz(den, denominator(x));
        };
        absorb(d.source.sides);
        absorb(d.target.sides);
        for (const piece &p : d.pieces) {
                absorb(p.anchor);
                absorb(p.sides);
                absorb(p.translation);
        }
        auto zz = [&den](const QQ &x) { return numerator(QQ(x * den)); };

        ZZ w1 = zz(d.source.sides[0]), h1 = zz(d.source.sides[1]);
        ZZ w2 = zz(d.target.sides[0]), h2 = zz(d.target.sides[1]);
        ZZ gap = (w1 + w2) / 8 + den;
        ZZ width = w1 + gap + w2;
        ZZ height = h1 > h2 ? h1 : h2;
        ZZ stroke = den / 16 + 1;

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
            << width << ' ' << height << "\">\n";
        auto rect = [&](const ZZ &x, const ZZ &y, const ZZ &w, const ZZ &h,
                        const std::string &fill) {
                svg << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\""
                    << w << "\" height=\"" << h << "\" fill=\"" << fill
                    << "\" stroke=\"#1a1a1a\" stroke-width=\"" << stroke
                    << "\"/>\n";
        };
        auto color_of = [](const piece &p) {
                std::string key;
                for (const QQ &x : p.translation)
                        key += frac_str(x) + ",";
                uint64_t hue = fnv1a(key) % 360;
                return "hsl(" + std::to_string(hue) + ",70%,65%)";
        };
        /* SVG grows downward; flip so both boxes sit on the bottom */
        for (const piece &p : d.pieces) {
                ZZ px = zz(p.anchor[0]), py = zz(p.anchor[1]);
                ZZ pw = zz(p.sides[0]), ph = zz(p.sides[1]);
                rect(px, height - py - ph, pw, ph, color_of(p));
        }
        for (const piece &p : d.pieces) {
                ZZ px = zz(p.anchor[0] + p.translation[0]);
                ZZ py = zz(p.anchor[1] + p.translation[1]);
                ZZ pw = zz(p.sides[0]), ph = zz(p.sides[1]);
                rect(w1 + gap + px, height - py - ph, pw, ph, color_of(p));
        }
        svg << "  <rect x=\"0\" y=\"" << height - h1 << "\" width=\"" << w1
            << "\" height=\"" << h1
            << "\" fill=\"none\" stroke=\"#000\" stroke-width=\""
            << 2 * stroke << "\"/>\n";
        svg << "  <rect x=\"" << w1 + gap << "\" y=\"" << height - h2
            << "\" width=\"" << w2 << "\" height=\"" << h2
            << "\" fill=\"none\" stroke=\"#000\" stroke-width=\""
            << 2 * stroke << "\"/>\n";
        svg << "</svg>\n";
        return svg.str();
}

} // namespace ohara
