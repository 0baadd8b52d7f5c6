#include "coxskel/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace coxskel {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& msg) {
    fail(ErrorKind::Schema, (where.empty() ? std::string("/") : where) + ": " + msg);
}

void only_keys(const Json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) schema(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) schema(where + "/" + it.key(), "unknown field");
}

const Json& field(const Json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) schema(where + "/" + key, "missing field");
    return j.at(key);
}

Int read_int(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) schema(where, "expected an integer, got '" + s + "'");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') schema(where, "expected an integer, got '" + s + "'");
        return Int(s[0] == '+' ? s.substr(1) : s);
    }
    schema(where, "expected an integer");
}

std::size_t read_index(const Json& j, const std::string& where) {
    Int v = read_int(j, where);
    if (v < 0 || v > Int(1000000)) schema(where, "expected a nonnegative index");
    return static_cast<std::size_t>(v);
}

ZVec read_vec(const Json& j, const std::string& where) {
    if (!j.is_array()) schema(where, "expected an array of integers");
    ZVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_int(j[i], where + "/" + std::to_string(i)));
    return v;
}

std::vector<ZVec> read_rows(const Json& j, const std::string& where) {
    if (!j.is_array()) schema(where, "expected an array of rows");
    std::vector<ZVec> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(read_vec(j[i], where + "/" + std::to_string(i)));
    return rows;
}

std::string position(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

ToricData parse_variety(const Json& j, const std::string& where) {
    if (!j.is_object()) schema(where, "expected an object");
    const Json& mode = field(j, where, "mode");
    if (!mode.is_string()) schema(where + "/mode", "expected \"fan\" or \"cox\"");
    std::string name = "X";
    if (j.contains("name")) {
        if (!j.at("name").is_string()) schema(where + "/name", "expected a string");
        name = j.at("name").get<std::string>();
    }
    if (mode == "fan") {
        only_keys(j, where, {"mode", "name", "dim", "rays", "cones", "multipliers", "class_basis"});
        const std::size_t dim = read_index(field(j, where, "dim"), where + "/dim");
        auto rays = read_rows(field(j, where, "rays"), where + "/rays");
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (rays[i].size() != dim) schema(where + "/rays/" + std::to_string(i), "ray length differs from dim");
        const Json& cj = field(j, where, "cones");
        if (!cj.is_array()) schema(where + "/cones", "expected an array of index lists");
        std::vector<Cone> cones;
        for (std::size_t c = 0; c < cj.size(); ++c) {
            const std::string w = where + "/cones/" + std::to_string(c);
            if (!cj[c].is_array()) schema(w, "expected an array of ray indices");
            Cone cone;
            for (std::size_t k = 0; k < cj[c].size(); ++k) {
                auto idx = read_index(cj[c][k], w + "/" + std::to_string(k));
                if (idx >= rays.size()) schema(w + "/" + std::to_string(k), "ray index out of range");
                cone.push_back(idx);
            }
            cones.push_back(cone);
        }
        ZVec mult;
        if (j.contains("multipliers")) {
            mult = read_vec(j.at("multipliers"), where + "/multipliers");
            if (mult.size() != rays.size()) schema(where + "/multipliers", "one multiplier per ray expected");
            for (std::size_t i = 0; i < mult.size(); ++i)
                if (mult[i] <= 0) schema(where + "/multipliers/" + std::to_string(i), "multipliers must be positive");
        }
        std::vector<std::size_t> basis;
        if (j.contains("class_basis")) {
            const Json& b = j.at("class_basis");
            if (!b.is_array()) schema(where + "/class_basis", "expected an array of ray indices");
            for (std::size_t k = 0; k < b.size(); ++k) basis.push_back(read_index(b[k], where + "/class_basis/" + std::to_string(k)));
        }
        auto bad = fan_violations(dim, rays, cones);
        if (!bad.empty()) schema(where + "/cones", to_string(bad[0].kind) + ": " + bad[0].detail);
        return from_fan(name, make_stacky(validate_fan(dim, rays, cones), mult), basis);
    }
    if (mode == "cox") {
        only_keys(j, where, {"mode", "name", "degrees", "torsion", "torsion_degrees"});
        auto degrees = read_rows(field(j, where, "degrees"), where + "/degrees");
        if (degrees.empty()) schema(where + "/degrees", "no variables");
        for (std::size_t i = 0; i < degrees.size(); ++i)
            if (degrees[i].size() != degrees[0].size()) schema(where + "/degrees/" + std::to_string(i), "ragged degree matrix");
        ZVec torsion;
        std::vector<ZVec> tdeg;
        if (j.contains("torsion")) torsion = read_vec(j.at("torsion"), where + "/torsion");
        if (j.contains("torsion_degrees")) tdeg = read_rows(j.at("torsion_degrees"), where + "/torsion_degrees");
        if (!torsion.empty() && tdeg.size() != degrees.size())
            schema(where + "/torsion_degrees", "one torsion degree per variable expected");
        return from_degrees(name, degrees, std::vector<Int>(torsion.begin(), torsion.end()), tdeg);
    }
    schema(where + "/mode", "expected \"fan\" or \"cox\"");
}

ThetaComplex parse_complex(const Json& j, const ToricData& td, const std::string& where) {
    only_keys(j, where, {"name", "lowest", "terms", "maps"});
    ThetaComplex c;
    c.nvars = td.nvars();
    Int lowest = read_int(field(j, where, "lowest"), where + "/lowest");
    if (lowest < -1000 || lowest > 1000) schema(where + "/lowest", "out of range");
    c.lowest = static_cast<int>(lowest);
    const Json& terms = field(j, where, "terms");
    if (!terms.is_array() || terms.empty()) schema(where + "/terms", "expected a nonempty array of terms");
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string w = where + "/terms/" + std::to_string(k);
        if (!terms[k].is_array()) schema(w, "expected an array of summands");
        std::vector<Summand> row;
        for (std::size_t s = 0; s < terms[k].size(); ++s) {
            const std::string ws = w + "/" + std::to_string(s);
            only_keys(terms[k][s], ws, {"class", "mult"});
            Summand sm;
            sm.cls = read_vec(field(terms[k][s], ws, "class"), ws + "/class");
            if (sm.cls.size() != td.cg.width()) schema(ws + "/class", "class has wrong width");
            sm.mult = terms[k][s].contains("mult") ? read_index(terms[k][s].at("mult"), ws + "/mult") : 1;
            row.push_back(sm);
        }
        c.terms.push_back(row);
    }
    const Json& maps = field(j, where, "maps");
    if (!maps.is_array() || maps.size() + 1 != terms.size()) schema(where + "/maps", "expected one matrix between consecutive terms");
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const std::string w = where + "/maps/" + std::to_string(k);
        if (!maps[k].is_array()) schema(w, "expected a matrix");
        std::vector<std::vector<Poly>> M;
        for (std::size_t r = 0; r < maps[k].size(); ++r) {
            if (!maps[k][r].is_array()) schema(w + "/" + std::to_string(r), "expected a row");
            std::vector<Poly> row;
            for (std::size_t s = 0; s < maps[k][r].size(); ++s) {
                const Json& e = maps[k][r][s];
                const std::string we = w + "/" + std::to_string(r) + "/" + std::to_string(s);
                if (e.is_number_integer()) {
                    row.push_back(monomial(zero_z(c.nvars), read_int(e, we)));
                } else if (e.is_string()) {
                    try {
                        row.push_back(parse_poly(e.get<std::string>(), c.nvars));
                    } catch (const CoxError& err) {
                        schema(we, err.what());
                    }
                } else {
                    schema(we, "expected a polynomial string");
                }
            }
            M.push_back(row);
        }
        c.maps.push_back(M);
    }
    return c;
}

InputDocument parse_input(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::Schema, "malformed input at " + position(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    InputDocument doc;
    doc.digest = hex64(fnv1a(text));
    if (j.is_object() && j.contains("variety")) {
        only_keys(j, "", {"variety", "complex"});
        doc.td = parse_variety(j.at("variety"), "/variety");
        if (j.contains("complex")) doc.complex = parse_complex(j.at("complex"), doc.td);
    } else {
        doc.td = parse_variety(j);
    }
    return doc;
}

InputDocument read_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Schema, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

Json cox_document(const ToricData& td) {
    Json degrees = Json::array(), tdeg = Json::array(), torsion = Json::array();
    for (std::size_t r = 0; r < td.nvars(); ++r) {
        ZVec d = td.cg.degree(r);
        degrees.push_back(to_json(ZVec(d.begin(), d.begin() + static_cast<long>(td.cg.free_rank))));
        tdeg.push_back(to_json(ZVec(d.begin() + static_cast<long>(td.cg.free_rank), d.end())));
    }
    for (const auto& t : td.cg.torsion) torsion.push_back(to_json(t));
    Json j = {{"mode", "cox"}, {"name", td.name}, {"degrees", degrees}};
    if (!td.cg.torsion.empty()) {
        j["torsion"] = torsion;
        j["torsion_degrees"] = tdeg;
    }
    return j;
}

Json to_json(const Int& v) { return to_string(v); }
Json to_json(const Rat& v) { return to_string(v); }

Json to_json(const ZVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const Dim& d) { return d.infinite ? Json("infinite") : Json(to_string(d.value)); }

Json to_json(const Poly& p) { return poly_str(p); }

}  // namespace coxskel
