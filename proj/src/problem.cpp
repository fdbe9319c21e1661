#include "varcert/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "varcert/parse.hpp"

namespace varcert {

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const std::string& t) { return t.empty(); }),
              out.end());
    return out;
}

}  // namespace

TermOrder ProblemFile::term_order() const {
    if (params.order == "lex") return TermOrder::lex(vars.size());
    if (params.order == "grevlex") return TermOrder::grevlex(vars.size());
    throw ParseError(0, "unknown term order '" + params.order + "'");
}

SearchBudget ProblemFile::budget() const {
    SearchBudget b = SearchBudget::defaults();
    b.max_branches_per_order = params.budget_branches;
    return b;
}

Box ProblemFile::box() const {
    Box b;
    if (!params.box_lo.empty()) {
        b.lo = params.box_lo;
        b.hi = params.box_hi;
        if (b.lo.size() == 1 && vars.size() > 1) {
            b.lo.assign(vars.size(), params.box_lo[0]);
            b.hi.assign(vars.size(), params.box_hi[0]);
        }
    } else {
        b.lo.assign(vars.size(), -2.0);
        b.hi.assign(vars.size(), 2.0);
    }
    if (b.lo.size() != vars.size())
        throw ParseError(0, "box dimension does not match the variable count");
    return b;
}

std::optional<ArcHom> ProblemFile::parse_arc() const {
    if (arc_images.empty()) return std::nullopt;
    if (points.empty()) throw ParseError(0, "arc section needs a basepoint ('point:')");
    const auto& p = points[0];
    int order = params.arc_order;
    std::vector<Jet> images;
    for (size_t v = 0; v < vars.size(); ++v) {
        std::string text = "0";
        bool found = false;
        for (const auto& [name, jet_text] : arc_images) {
            if (name == vars[v]) {
                text = jet_text;
                found = true;
                break;
            }
        }
        (void)found;
        Polynomial je = parse_polynomial(text, {"e"});
        Jet j(order);
        j.c[0] = p[v];
        for (const auto& [m, c] : je.terms()) {
            uint32_t deg = m.exps[0];
            if (deg == 0) {
                if (c != p[v])
                    throw ParseError(0, "arc constant term must match the basepoint");
                continue;
            }
            if (static_cast<int>(deg) >= order)
                throw ParseError(0, "arc coefficient index exceeds the order");
            j.c[deg] = c;
        }
        images.push_back(std::move(j));
    }
    return ArcHom(p, std::move(images));
}

ProblemFile parse_problem(const std::string& text) {
    ProblemFile pf;
    pf.source_text = text;
    std::istringstream in(text);
    std::string line;
    size_t offset = 0;
    bool saw_vars = false;
    while (std::getline(in, line)) {
        size_t line_offset = offset;
        offset += line.size() + 1;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(line_offset, "expected 'section: value'");
        std::string key = strip(line.substr(0, colon));
        std::string value = strip(line.substr(colon + 1));
        if (key == "vars") {
            for (const auto& v : split(value, ',')) pf.vars.push_back(v);
            saw_vars = true;
        } else if (key == "ideal") {
            if (!saw_vars) throw ParseError(line_offset, "'vars:' must come before 'ideal:'");
            for (const auto& g : split(value, ','))
                pf.ideal_gens.push_back(parse_polynomial(g, pf.vars));
        } else if (key == "f") {
            if (!saw_vars) throw ParseError(line_offset, "'vars:' must come before 'f:'");
            pf.f = parse_polynomial(value, pf.vars);
        } else if (key == "point") {
            auto p = parse_point(value);
            if (saw_vars && p.size() != pf.vars.size())
                throw ParseError(line_offset, "point dimension does not match 'vars:'");
            pf.points.push_back(std::move(p));
        } else if (key == "candidates") {
            if (!saw_vars)
                throw ParseError(line_offset, "'vars:' must come before 'candidates:'");
            for (const auto& c : split(value, ';'))
                pf.candidates.push_back(parse_polynomial(c, pf.vars));
        } else if (key == "arc") {
            for (const auto& item : split(value, ';')) {
                auto arrow = item.find("->");
                if (arrow == std::string::npos)
                    throw ParseError(line_offset, "arc items look like 'x -> -e + e^2'");
                pf.arc_images.emplace_back(strip(item.substr(0, arrow)),
                                           strip(item.substr(arrow + 2)));
            }
        } else if (key == "flags") {
            for (const auto& fl : split(value, ',')) {
                if (fl == "assert-real-radical")
                    pf.params.assert_real_radical = true;
                else
                    throw ParseError(line_offset, "unknown flag '" + fl + "'");
            }
        } else if (key == "params") {
            std::istringstream ps(value);
            std::string kv;
            while (ps >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ParseError(line_offset, "params are 'key=value' pairs");
                std::string pk = kv.substr(0, eq), pv = kv.substr(eq + 1);
                auto as_int = [&] { return std::stoi(pv); };
                auto as_double = [&] { return std::stod(pv); };
                if (pk == "k")
                    pf.params.k = as_int();
                else if (pk == "d")
                    pf.params.d = as_int();
                else if (pk == "kMax")
                    pf.params.k_max = as_int();
                else if (pk == "maxOrder")
                    pf.params.max_order = as_int();
                else if (pk == "liftTo")
                    pf.params.lift_to = as_int();
                else if (pk == "arcOrder")
                    pf.params.arc_order = as_int();
                else if (pk == "budget")
                    pf.params.budget_branches = std::stol(pv);
                else if (pk == "order")
                    pf.params.order = pv;
                else if (pk == "resolution")
                    pf.params.resolution = as_double();
                else if (pk == "tol")
                    pf.params.tol = as_double();
                else if (pk == "sdpTol")
                    pf.params.sdp_tol = as_double();
                else if (pk == "sdpIterations")
                    pf.params.sdp_iterations = std::stol(pv);
                else if (pk == "box") {
                    auto parts = split(pv, ';');
                    if (parts.size() != 2)
                        throw ParseError(line_offset, "box=lo;hi");
                    pf.params.box_lo.assign(1, std::stod(parts[0]));
                    pf.params.box_hi.assign(1, std::stod(parts[1]));
                } else {
                    throw ParseError(line_offset, "unknown parameter '" + pk + "'");
                }
            }
        } else {
            throw ParseError(line_offset, "unknown section '" + key + "'");
        }
    }
    if (!saw_vars) throw ParseError(0, "missing 'vars:' section");
    return pf;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string format_point(const std::vector<Rational>& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(p[i]);
    }
    return s + ")";
}

}  // namespace varcert
