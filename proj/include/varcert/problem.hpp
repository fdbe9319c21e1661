#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varcert/arcsearch.hpp"
#include "varcert/jet.hpp"

namespace varcert {

struct ProblemParams {
    std::string order = "grevlex";  // or "lex"
    int k = 2;
    int d = 1;
    int k_max = 2;
    int max_order = 4;
    int lift_to = 0;
    int arc_order = 2;
    long budget_branches = 20000;
    std::vector<double> box_lo, box_hi;  // defaults to [-2, 2]^n
    double resolution = 0.05;
    double tol = 1e-9;
    double sdp_tol = 1e-8;
    long sdp_iterations = 50000;
    bool assert_real_radical = false;
};

/// Parsed problem file. Line-oriented sections "vars:", "ideal:", "f:",
/// "point:", "candidates:", "arc:", "params:", "flags:"; `#` comments.
struct ProblemFile {
    std::vector<std::string> vars;
    std::vector<Polynomial> ideal_gens;
    std::optional<Polynomial> f;
    std::vector<std::vector<Rational>> points;
    std::vector<Polynomial> candidates;
    std::vector<std::pair<std::string, std::string>> arc_images;  // var -> jet text
    ProblemParams params;
    std::string source_text;

    TermOrder term_order() const;
    SearchBudget budget() const;
    Box box() const;
    /// Arc from the "arc:" section at the problem's first point.
    std::optional<ArcHom> parse_arc() const;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

std::string format_point(const std::vector<Rational>& p);

}  // namespace varcert
