#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>

#include "jamsched/ilp.hpp"

using namespace jamsched;

namespace {

// The rotation-count instance used across the scheduler tests: three usable
// sets over six units a..f, every unit good for two activations. Best plan
// skips the first set entirely.
Model rotation_toy() {
  Model m;
  m.sense = Sense::Maximize;
  int n1 = m.add_variable("n1", 0, 2, true);
  int n2 = m.add_variable("n2", 0, 2, true);
  int n3 = m.add_variable("n3", 0, 2, true);
  m.set_objective(n1, 1);
  m.set_objective(n2, 1);
  m.set_objective(n3, 1);
  m.add_constraint("use_a", {{n1, 1}, {n2, 1}}, Relation::LessEqual, 2);
  m.add_constraint("use_b", {{n1, 1}, {n3, 1}}, Relation::LessEqual, 2);
  m.add_constraint("use_c", {{n1, 1}, {n2, 1}}, Relation::LessEqual, 2);
  m.add_constraint("use_d", {{n2, 1}}, Relation::LessEqual, 2);
  m.add_constraint("use_e", {{n1, 1}}, Relation::LessEqual, 2);
  m.add_constraint("use_f", {{n3, 1}}, Relation::LessEqual, 2);
  return m;
}

struct BruteResult {
  bool feasible = false;
  double objective = 0;
};

// Ground truth for small all-binary models.
BruteResult brute_force(const Model& m) {
  int n = m.variable_count();
  BruteResult best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      double v = mask >> j & 1u;
      ok = v >= m.lower[j] - 1e-9 && v <= m.upper[j] + 1e-9;
    }
    for (const Constraint& c : m.rows) {
      if (!ok) break;
      double lhs = 0;
      for (const LinearTerm& t : c.terms) lhs += t.coeff * (mask >> t.var & 1u);
      switch (c.relation) {
        case Relation::LessEqual: ok = lhs <= c.rhs + 1e-9; break;
        case Relation::GreaterEqual: ok = lhs >= c.rhs - 1e-9; break;
        case Relation::Equal: ok = std::abs(lhs - c.rhs) <= 1e-9; break;
      }
    }
    if (!ok) continue;
    double obj = 0;
    for (int j = 0; j < n; ++j) obj += m.objective[j] * (mask >> j & 1u);
    if (!best.feasible || (m.sense == Sense::Minimize ? obj < best.objective : obj > best.objective)) {
      best.feasible = true;
      best.objective = obj;
    }
  }
  return best;
}

Model random_binary_model(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Model m;
  int n = 3 + static_cast<int>(rng() % 4);  // 3..6 variables
  for (int j = 0; j < n; ++j) m.add_variable("x" + std::to_string(j), 0, 1, true);
  m.sense = rng() % 2 ? Sense::Maximize : Sense::Minimize;
  for (int j = 0; j < n; ++j)
    m.set_objective(j, static_cast<double>(static_cast<long long>(rng() % 11)) - 5);
  int rows = 1 + static_cast<int>(rng() % 4);
  for (int r = 0; r < rows; ++r) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < n; ++j) {
      double c = static_cast<double>(static_cast<long long>(rng() % 9)) - 4;
      if (c != 0) terms.push_back({j, c});
    }
    if (terms.empty()) terms.push_back({0, 1.0});
    Relation rel = rng() % 8 == 0 ? Relation::Equal
                   : rng() % 2    ? Relation::LessEqual
                                  : Relation::GreaterEqual;
    double rhs = static_cast<double>(static_cast<long long>(rng() % 13)) - 6;
    m.add_constraint("r" + std::to_string(r), std::move(terms), rel, rhs);
  }
  return m;
}

}  // namespace

TEST_CASE("rotation toy instance solves to the known plan") {
  Model m = rotation_toy();
  Solution s = solve_ilp(m);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == Catch::Approx(4.0));
  // The optimum is unique: any use of the first set caps the other two.
  CHECK(s.values[0] == 0.0);
  CHECK(s.values[1] == 2.0);
  CHECK(s.values[2] == 2.0);

  // Forcing the first set into the plan costs one rotation.
  Model forced = rotation_toy();
  forced.lower[0] = 1;
  Solution f = solve_ilp(forced);
  REQUIRE(f.status == SolveStatus::Optimal);
  CHECK(f.objective == Catch::Approx(3.0));
}

TEST_CASE("exact solve matches brute force on random binary models") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    CAPTURE(seed);
    Model m = random_binary_model(seed);
    BruteResult truth = brute_force(m);
    Solution s = solve_ilp(m);
    if (!truth.feasible) {
      CHECK(s.status == SolveStatus::Infeasible);
      continue;
    }
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.objective == Catch::Approx(truth.objective).margin(1e-6));

    // Solution must satisfy the model it came from.
    for (const Constraint& c : m.rows) {
      double lhs = 0;
      for (const LinearTerm& t : c.terms) lhs += t.coeff * s.values[t.var];
      switch (c.relation) {
        case Relation::LessEqual: CHECK(lhs <= c.rhs + 1e-6); break;
        case Relation::GreaterEqual: CHECK(lhs >= c.rhs - 1e-6); break;
        case Relation::Equal: CHECK(lhs == Catch::Approx(c.rhs).margin(1e-6)); break;
      }
    }
    for (int j = 0; j < m.variable_count(); ++j)
      CHECK(s.values[j] == std::round(s.values[j]));  // exactly integral

    // The relaxation can only be at least as good as the integer optimum.
    Solution relax = solve_lp(m);
    REQUIRE(relax.status == SolveStatus::Optimal);
    if (m.sense == Sense::Minimize)
      CHECK(relax.objective <= s.objective + 1e-6);
    else
      CHECK(relax.objective >= s.objective - 1e-6);
  }
}

TEST_CASE("repeated solves are bit-identical") {
  for (std::uint64_t seed : {3u, 17u, 42u}) {
    Model m = random_binary_model(seed);
    Solution a = solve_ilp(m);
    Solution b = solve_ilp(m);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);
    CHECK(a.values == b.values);
    CHECK(a.nodes_explored == b.nodes_explored);
  }
}

TEST_CASE("relaxation handles unbounded and mirrored variables") {
  Model up;
  up.sense = Sense::Maximize;
  up.add_variable("x", 0, kInf);
  up.set_objective(0, 1);
  CHECK(solve_lp(up).status == SolveStatus::Unbounded);
  // An unbounded integer variable would make the search tree infinite, so the
  // exact solver refuses it outright.
  up.integer[0] = 1;
  CHECK_THROWS_AS(solve_ilp(up), ModelError);

  Model mir;
  mir.sense = Sense::Maximize;
  mir.add_variable("x", -kInf, 4.5);
  mir.set_objective(0, 1);
  Solution s = solve_lp(mir);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.values[0] == Catch::Approx(4.5));

  Model free_var;
  free_var.add_variable("x", -kInf, kInf);
  free_var.add_variable("y", 0, 1);
  free_var.set_objective(0, 1);
  free_var.add_constraint("tie", {{0, 1}, {1, 1}}, Relation::Equal, 2);
  Solution t = solve_lp(free_var);
  REQUIRE(t.status == SolveStatus::Optimal);
  CHECK(t.objective == Catch::Approx(1.0));  // x = 2 - y, y at its cap
}

TEST_CASE("infeasible and budget-limited solves") {
  Model bad;
  bad.add_variable("a", 0, 1, true);
  bad.add_variable("b", 0, 1, true);
  bad.add_constraint("impossible", {{0, 1}, {1, 1}}, Relation::LessEqual, -1);
  CHECK(solve_ilp(bad).status == SolveStatus::Infeasible);

  // A model whose relaxation is fractional needs at least one branch, so a
  // one-node budget cannot finish.
  Model frac;
  frac.sense = Sense::Maximize;
  frac.add_variable("a", 0, 1, true);
  frac.add_variable("b", 0, 1, true);
  frac.set_objective(0, 2);
  frac.set_objective(1, 2);
  frac.add_constraint("cap", {{0, 1}, {1, 1}}, Relation::LessEqual, 1.5);
  SolveOptions tight;
  tight.node_limit = 1;
  CHECK_THROWS_AS(solve_ilp(frac, tight), ResourceError);
  CHECK(solve_ilp(frac).status == SolveStatus::Optimal);
}

TEST_CASE("degenerate rows survive: duplicates and wild scaling") {
  Model m;
  m.add_variable("x", 0, kInf);
  m.add_variable("y", 0, kInf);
  m.set_objective(0, 1);
  m.set_objective(1, 1);
  m.add_constraint("pin1", {{0, 1}, {1, 1}}, Relation::Equal, 1);
  m.add_constraint("pin2", {{0, 1}, {1, 1}}, Relation::Equal, 1);  // redundant copy
  m.add_constraint("huge", {{0, 1e8}, {1, 1e8}}, Relation::LessEqual, 1e8);
  Solution s = solve_lp(m);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == Catch::Approx(1.0));
}

TEST_CASE("model text round-trips through parse") {
  Model m = rotation_toy();
  std::string text = export_model(m);
  Model back = parse_model(text);
  CHECK(export_model(back) == text);

  // Shape of the canonical text.
  CHECK(text.substr(0, 9) == "maximize\n");
  CHECK(text.find("use_d: 1 n2 <= 2\n") != std::string::npos);
  CHECK(text.find("integers\nn1 n2 n3\n") != std::string::npos);
  std::size_t lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  // sense, obj, subject to, 6 rows, bounds, 3 bound lines, integers, names, end
  CHECK(lines == 16);

  // Parsed model solves to the same plan.
  Solution s = solve_ilp(back);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == Catch::Approx(4.0));
  CHECK(back.names[1] == "n2");
  CHECK(back.rows.size() == 6);
}

TEST_CASE("random models round-trip through the text format") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    CAPTURE(seed);
    Model m = random_binary_model(seed);
    std::string text = export_model(m);
    Model back = parse_model(text);
    CHECK(export_model(back) == text);
    Solution a = solve_ilp(m);
    Solution b = solve_ilp(back);
    CHECK(a.status == b.status);
    if (a.status == SolveStatus::Optimal) CHECK(a.objective == Catch::Approx(b.objective).margin(1e-9));
  }
}

TEST_CASE("objective constants ride along through solves and text") {
  Model m;
  m.sense = Sense::Maximize;
  m.add_variable("x", 0, 3, true);
  m.set_objective(0, 2);
  m.objective_constant = -1.5;
  Solution s = solve_ilp(m);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == Catch::Approx(4.5));  // 2*3 - 1.5
  CHECK(solve_lp(m).objective == Catch::Approx(4.5));

  std::string text = export_model(m);
  CHECK(text.find("obj: 2 x - 1.5\n") != std::string::npos);
  Model back = parse_model(text);
  CHECK(back.objective_constant == -1.5);
  CHECK(export_model(back) == text);

  // A constant-only objective still prints and parses.
  Model flat;
  flat.add_variable("x", 0, 1);
  flat.objective_constant = 7;
  std::string flat_text = export_model(flat);
  CHECK(flat_text.find("obj: 7\n") != std::string::npos);
  CHECK(parse_model(flat_text).objective_constant == 7.0);
}

TEST_CASE("constraint-free models skip the subject-to section") {
  Model m;
  m.add_variable("x", 0, 5, true);
  m.set_objective(0, 1);
  std::string text = export_model(m);
  CHECK(text.find("subject to") == std::string::npos);
  CHECK(text == "minimize\nobj: 1 x\nbounds\n0 <= x <= 5\nintegers\nx\nend\n");
  Model back = parse_model(text);
  CHECK(export_model(back) == text);
  CHECK(solve_ilp(back).objective == 0.0);
}

TEST_CASE("rounding heuristic yields feasible points and never beats exact") {
  // On the rotation toy the relaxation optimum is already integral.
  Model toy = rotation_toy();
  Solution r = solve_rounded(toy);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == Catch::Approx(4.0));

  int feasible = 0, attempted = 0;
  for (std::uint64_t seed = 400; seed < 460; ++seed) {
    CAPTURE(seed);
    Model m = random_binary_model(seed);
    Solution exact = solve_ilp(m);
    if (exact.status == SolveStatus::Optimal) ++feasible;
    Solution rough = solve_rounded(m);
    if (rough.status != SolveStatus::Optimal) continue;  // repair gave up
    ++attempted;
    REQUIRE(exact.status == SolveStatus::Optimal);

    // Feasibility of the rounded point, checked by substitution.
    for (const Constraint& c : m.rows) {
      double lhs = 0;
      for (const LinearTerm& t : c.terms) lhs += t.coeff * rough.values[t.var];
      switch (c.relation) {
        case Relation::LessEqual: CHECK(lhs <= c.rhs + 1e-6); break;
        case Relation::GreaterEqual: CHECK(lhs >= c.rhs - 1e-6); break;
        case Relation::Equal: CHECK(lhs == Catch::Approx(c.rhs).margin(1e-6)); break;
      }
    }
    if (m.sense == Sense::Minimize)
      CHECK(rough.objective >= exact.objective - 1e-6);
    else
      CHECK(rough.objective <= exact.objective + 1e-6);
  }
  // The heuristic should patch up most instances that have a solution at all.
  CHECK(feasible >= 20);
  CHECK(attempted * 4 >= feasible * 3);
}

TEST_CASE("parser accepts loose spacing and bare coefficients") {
  const char* text =
      "minimize\n"
      "obj:   x0 -  2 x1\n"
      "subject to\n"
      "r0:  x0 + x1 >= 1\n"
      "bounds\n"
      "0 <= x0 <= 1\n"
      "0 <= x1 <= 1\n"
      "integers\n"
      "x0 x1\n"
      "end\n";
  Model m = parse_model(text);
  CHECK(m.objective[0] == 1.0);
  CHECK(m.objective[1] == -2.0);
  Solution s = solve_ilp(m);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == Catch::Approx(-2.0));
  CHECK(s.values[0] == 0.0);
  CHECK(s.values[1] == 1.0);
}

TEST_CASE("parser rejects malformed models") {
  CHECK_THROWS_AS(parse_model("minimize\nobj: x\nsubject to\nbounds\nx >= 0\n"), ModelError);  // no end
  CHECK_THROWS_AS(parse_model("shrink\nobj: x\nsubject to\nbounds\nend\n"), ModelError);
  CHECK_THROWS_AS(parse_model("minimize\nobj: x\nsubject to\nr0: 3 + x <= 1\nbounds\nend\n"),
                  ModelError);  // constants only belong in the objective
  CHECK_THROWS_AS(parse_model("minimize\nobj: x\nsubject to\nr0: x 1\nbounds\nend\n"), ModelError);
  CHECK_THROWS_AS(
      parse_model("minimize\nobj: x\nsubject to\nr0: x <= 1\nr0: x <= 2\nbounds\nend\n"),
      ModelError);
  CHECK_THROWS_AS(parse_model("minimize\nobj: x\nsubject to\nbounds\nend\nextra\n"), ModelError);
  CHECK_THROWS_AS(parse_model(""), ModelError);
}

TEST_CASE("model builder rejects bad input") {
  Model m;
  CHECK_THROWS_AS(m.add_variable("2x"), ModelError);
  m.add_variable("x");
  CHECK_THROWS_AS(m.add_variable("x"), ModelError);
  CHECK_THROWS_AS(m.set_objective(3, 1.0), ModelError);
  CHECK_THROWS_AS(m.add_constraint("r", {{0, 1.0 / 0.0}}, Relation::Equal, 0), ModelError);
  m.add_constraint("r", {{0, 1}}, Relation::LessEqual, 5);
  CHECK_THROWS_AS(m.add_constraint("r", {{0, 1}}, Relation::LessEqual, 5), ModelError);
  Model empty;
  CHECK_THROWS_AS(solve_ilp(empty), ModelError);
}
