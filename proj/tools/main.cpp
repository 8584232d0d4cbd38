// Command-line surface: one binary, five subcommands.
//
//   lambda        character value of one matrix
//   table         the full genus-1 character table
//   jm            lagrangian pairing / transport queries
//   verify-theta  randomized functional-equation sweeps
//   selftest      the library's invariant suite
//
// Output is line-delimited JSON on stdout; diagnostics go to stderr.
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "thetamult/json_io.hpp"
#include "thetamult/lagrangian.hpp"
#include "thetamult/lambda.hpp"
#include "thetamult/selftest.hpp"
#include "thetamult/siegel.hpp"
#include "thetamult/symplectic.hpp"

namespace {

using nlohmann::json;
using namespace thetamult;

constexpr int kExitSuccess = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInvalidInput = 2;

Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw std::invalid_argument("parity must be 'even' or 'odd'");
}

void emit(const json& record) { std::cout << record.dump() << "\n"; }

int cmd_lambda(int g, const std::string& parity_name,
               const std::string& matrix_arg) {
  const auto [space, form] = make_standard(g, parse_parity(parity_name));
  const Z4Matrix m =
      z4_matrix_from_json(parse_json_or_file(matrix_arg), space.dim());
  if (!is_member(space, form, m)) {
    emit(json{{"member", false}});
    std::cerr << "matrix is not a member of the group for this form\n";
    return kExitInvalidInput;
  }
  const LambdaReport report = lambda_report(space, form, m);
  json word = json::array();
  for (const Z4Vector& v : report.word.vectors)
    word.push_back(z4_vector_to_json(v));
  emit(json{{"member", true},
            {"lambda", report.lambda},
            {"dickson", report.dickson},
            {"word_length", report.word.length()},
            {"word", std::move(word)}});
  return kExitSuccess;
}

int cmd_table(int g, const std::string& parity_name) {
  if (g != 1)
    throw std::invalid_argument("table enumeration is available at genus 1 only");
  const CharacterTable table = character_table_g1(parse_parity(parity_name));
  for (const auto& [mat, value] : table.entries)
    emit(json{{"matrix", z4_matrix_to_json(mat)}, {"lambda", value}});
  emit(json{{"size", table.size()}});
  return kExitSuccess;
}

int cmd_jm(int g, const std::string& l1_arg, const std::string& l2_arg,
           const std::string& gamma_arg) {
  const auto [space, form] = make_standard(g, Parity::even);
  if (!gamma_arg.empty()) {
    const Z4Matrix m =
        z4_matrix_from_json(parse_json_or_file(gamma_arg), space.dim());
    if (!is_member(space, form, m))
      throw std::invalid_argument("gamma is not a member of the group");
    const OrientedLagrangian l0 =
        l1_arg.empty()
            ? standard_lagrangian(space, form)
            : lagrangian_from_json(space, form, parse_json_or_file(l1_arg));
    const ThetaGroupElement gamma(space, form, m);
    emit(json{{"lambda_jm", lambda_jm(gamma, l0)},
              {"l0", lagrangian_to_json(l0)}});
    return kExitSuccess;
  }
  if (l1_arg.empty() || l2_arg.empty())
    throw std::invalid_argument("jm needs either --gamma or both --l1 and --l2");
  const OrientedLagrangian l1 =
      lagrangian_from_json(space, form, parse_json_or_file(l1_arg));
  const OrientedLagrangian l2 =
      lagrangian_from_json(space, form, parse_json_or_file(l2_arg));
  const int inter = intersect_dim_f2(l1.reduced_rows(), l2.reduced_rows());
  emit(json{{"m_jm", m_jm(l1, l2)},
            {"sigma", sigma(l1, l2)},
            {"intersection_dim", inter},
            {"transport_lambda",
             lambda(space, form, transport_gamma(l1, l2).mat)}});
  return kExitSuccess;
}

int cmd_verify_theta(int g, int count, int word_length, double tol,
                     uint64_t seed) {
  if (g < 1 || g > 3)
    throw std::invalid_argument("verify-theta supports genus 1 to 3");
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  if (tol < 0.0) throw std::invalid_argument("tol must be nonnegative");
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const IntSymplectic m =
        random_theta_group_element(g, word_length, seed + 2 * i);
    const SiegelPoint tau = random_siegel_point(g, seed + 2 * i + 1);
    const double residual = functional_equation_residual(m, tau, tol);
    const auto [space, form] = make_standard(g, Parity::even);
    const int lam = lambda(space, form, m.mod4());
    const Complex det = denominator_det(m, tau);
    worst = std::max(worst, residual);
    emit(json{{"index", i},
              {"residual", residual},
              {"lambda", lam},
              {"det_factor", json::array({det.real(), det.imag()})}});
  }
  const bool pass = worst < tol;
  emit(json{{"count", count}, {"max_residual", worst}, {"pass", pass}});
  return pass ? kExitSuccess : kExitVerifyFailure;
}

int cmd_selftest(uint64_t seed) {
  SelftestOptions options;
  options.seed = seed;
  const std::vector<SelftestItem> items = run_selftest(options);
  int failed = 0;
  for (const SelftestItem& item : items) {
    if (!item.passed) ++failed;
    emit(json{{"index", item.index},
              {"name", item.name},
              {"pass", item.passed},
              {"detail", item.detail}});
  }
  emit(json{{"pass", failed == 0}, {"failed", failed}});
  return failed == 0 ? kExitSuccess : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta-multiplier character toolkit"};
  app.require_subcommand(1);

  int g = 1;
  std::string parity = "even";
  std::string matrix_arg;
  std::string l1_arg, l2_arg, gamma_arg;
  int count = 10;
  int word_length = 6;
  double tol = 1e-10;
  uint64_t seed = 0;

  CLI::App* sub_lambda = app.add_subcommand("lambda", "character value of one matrix");
  sub_lambda->add_option("--g", g, "genus")->required();
  sub_lambda->add_option("--parity", parity, "even or odd")->required();
  sub_lambda->add_option("--matrix", matrix_arg, "2g x 2g matrix, JSON or file")
      ->required();

  CLI::App* sub_table = app.add_subcommand("table", "genus-1 character table");
  sub_table->add_option("--g", g, "genus (must be 1)")->required();
  sub_table->add_option("--parity", parity, "even or odd")->required();

  CLI::App* sub_jm = app.add_subcommand("jm", "lagrangian pairing queries");
  sub_jm->add_option("--g", g, "genus")->required();
  sub_jm->add_option("--l1", l1_arg, "first lagrangian, JSON or file");
  sub_jm->add_option("--l2", l2_arg, "second lagrangian, JSON or file");
  sub_jm->add_option("--gamma", gamma_arg, "group element for lambda_jm");

  CLI::App* sub_verify =
      app.add_subcommand("verify-theta", "functional equation sweep");
  sub_verify->add_option("--g", g, "genus, 1 to 3")->required();
  sub_verify->add_option("--count", count, "number of random checks");
  sub_verify->add_option("--word-length", word_length, "generator word length");
  sub_verify->add_option("--tol", tol, "residual tolerance");
  sub_verify->add_option("--seed", seed, "random seed")->required();

  CLI::App* sub_selftest = app.add_subcommand("selftest", "invariant suite");
  sub_selftest->add_option("--seed", seed, "random seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitInvalidInput;
  }

  try {
    if (sub_lambda->parsed()) return cmd_lambda(g, parity, matrix_arg);
    if (sub_table->parsed()) return cmd_table(g, parity);
    if (sub_jm->parsed()) return cmd_jm(g, l1_arg, l2_arg, gamma_arg);
    if (sub_verify->parsed())
      return cmd_verify_theta(g, count, word_length, tol, seed);
    if (sub_selftest->parsed()) return cmd_selftest(seed);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
