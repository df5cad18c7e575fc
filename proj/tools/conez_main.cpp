// conez command-line front end: membership certificates, gamma/P/Q
// decomposition, sample generation, the pair/dyad bridge, and the
// verification suites.  Standard output carries JSON only; diagnostics go to
// standard error.  Exit codes: 0 success/member, 1 negative verdict, 2
// usage or I/O trouble.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "conez/conez.hpp"

namespace {

using nlohmann::ordered_json;

struct TolArgs {
  std::optional<double> flat;
  std::string config_path;
};

void add_tol_options(CLI::App* cmd, TolArgs& args) {
  cmd->add_option("--tol", args.flat,
                  "relative tolerance applied to all three roles (psd, sym, zero); default 1e-9");
  cmd->add_option("--config", args.config_path,
                  "JSON file with per-role overrides: {\"eps_psd\":..,\"eps_sym\":..,\"eps_zero\":..}");
}

// Defaults, then the flat --tol, then per-role config values on top.
conez::Tolerances resolve_tolerances(const TolArgs& args) {
  conez::Tolerances tol;
  if (args.flat) {
    if (!(*args.flat >= 0.0)) throw conez::Error("--tol must be nonnegative");
    tol = {*args.flat, *args.flat, *args.flat};
  }
  if (!args.config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(conez::io::detail::slurp(args.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw conez::IoError(args.config_path + ": " + e.what());
    }
    if (!j.is_object()) throw conez::IoError(args.config_path + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (!value.is_number())
        throw conez::IoError(args.config_path + ": " + key + " must be a number");
      const double v = value.get<double>();
      if (!(v >= 0.0)) throw conez::IoError(args.config_path + ": " + key + " must be nonnegative");
      if (key == "eps_psd")
        tol.eps_psd = v;
      else if (key == "eps_sym")
        tol.eps_sym = v;
      else if (key == "eps_zero")
        tol.eps_zero = v;
      else
        throw conez::IoError(args.config_path + ": unknown key '" + key + "'");
    }
  }
  return tol;
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

int run_check_z(const std::string& input, const std::string& cone, const TolArgs& tol_args) {
  const conez::Tolerances tol = resolve_tolerances(tol_args);
  const conez::Matrix a = conez::io::read_matrix(input);
  ordered_json out;
  bool member = false;
  if (cone == "orthant") {
    member = conez::z_oracle_orthant(a, tol);
    out["member"] = member;
    out["gamma_star"] = nullptr;
    out["gamma_param"] = nullptr;
    out["lambda_min"] = nullptr;
  } else {
    const conez::ZCertificate cert = conez::z_oracle_lorentz(a, tol);
    member = cert.member;
    out["member"] = cert.member;
    out["gamma_star"] = cert.gamma_star;
    out["gamma_param"] = cert.gamma_star / 2.0;
    out["lambda_min"] = cert.lambda_min_at_star;
  }
  emit(out);
  return member ? 0 : 1;
}

int run_check_dual(const std::string& input, const std::string& cone, const TolArgs& tol_args) {
  const conez::Tolerances tol = resolve_tolerances(tol_args);
  const conez::Matrix b = conez::io::read_matrix(input);
  ordered_json out;
  bool member = false;
  if (cone == "orthant") {
    member = conez::dual_oracle_orthant(b, tol);
    out["member"] = member;
    out["trace"] = b.trace();
    out["sym_defect"] = nullptr;
    out["lambda_max_jb"] = nullptr;
  } else {
    const conez::DualCertificate cert = conez::dual_oracle_lorentz(b, tol);
    member = cert.member;
    out["member"] = cert.member;
    out["trace"] = cert.trace_residual;
    out["sym_defect"] = cert.sym_defect;
    out["lambda_max_jb"] = cert.lambda_max_jb;
  }
  emit(out);
  return member ? 0 : 1;
}

int run_decompose(const std::string& input, const std::string& outdir, const TolArgs& tol_args) {
  const conez::Tolerances tol = resolve_tolerances(tol_args);
  const conez::Matrix a = conez::io::read_matrix(input);
  const conez::ZDecomposition dec = conez::z_decompose(a, tol);  // throws NotMember on reject
  std::filesystem::create_directories(outdir);
  const auto path = [&](const char* name) { return (std::filesystem::path(outdir) / name).string(); };
  conez::io::write_text(path("gamma.txt"), conez::io::format_entry(dec.gamma) + "\n");
  conez::io::write_matrix_csv(path("P.csv"), dec.psd_part);
  conez::io::write_matrix_csv(path("Q.csv"), dec.skew_part);
  ordered_json out;
  out["member"] = true;
  out["gamma"] = dec.gamma;
  out["output_dir"] = outdir;
  emit(out);
  return 0;
}

int run_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  const auto path = [&](const char* name) { return (std::filesystem::path(outdir) / name).string(); };
  auto eng = conez::rng::engine(seed);
  if (kind == "z") {
    conez::io::write_matrix_csv(path("A.csv"), conez::sample_z_lorentz(n, eng));
  } else if (kind == "dual-psd") {
    conez::io::write_matrix_csv(path("B.csv"),
                                conez::sample_dual_lorentz(n, eng, conez::DualKind::PsdBalanced));
  } else if (kind == "dual-dyad") {
    conez::io::write_matrix_csv(path("B.csv"),
                                conez::sample_dual_lorentz(n, eng, conez::DualKind::DyadSum));
  } else {  // pair
    const conez::CompPair pr = conez::sample_complementary_pair(n, eng);
    conez::io::write_vector_csv(path("x.csv"), pr.x);
    conez::io::write_vector_csv(path("y.csv"), pr.y);
  }
  ordered_json prov;
  prov["kind"] = kind;
  prov["n"] = n;
  prov["seed"] = seed;
  conez::io::write_text(path("provenance.json"), prov.dump(2) + "\n");
  ordered_json out = prov;
  out["output_dir"] = outdir;
  emit(out);
  return 0;
}

int run_pair(const std::string& xpath, const std::string& ypath, const TolArgs& tol_args) {
  const conez::Tolerances tol = resolve_tolerances(tol_args);
  const conez::Vector x = conez::io::read_vector(xpath);
  const conez::Vector y = conez::io::read_vector(ypath);
  const conez::PairCheck chk = conez::complementarity_check(x, y, tol);
  const conez::Matrix dyad = conez::dyad_from_pair(x, y);
  const conez::DualCertificate cert = conez::dual_oracle_lorentz(dyad, tol);
  ordered_json out;
  out["pair"] = {{"in_c", chk.in_c},
                 {"reason", conez::to_string(chk.reason)},
                 {"inner_product", chk.inner_product}};
  out["dyad"] = {{"member", cert.member},
                 {"trace", cert.trace_residual},
                 {"sym_defect", cert.sym_defect},
                 {"lambda_max_jb", cert.lambda_max_jb}};
  out["agree"] = chk.in_c == cert.member;
  emit(out);
  return (chk.in_c && cert.member) ? 0 : 1;
}

int run_verify(const std::string& suite, int n, int trials, std::uint64_t seed) {
  const auto reports = conez::run_suites(suite, n, trials, seed);
  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << conez::report_line(r) << "\n";
    all_pass = all_pass && r.pass();
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentz-cone Z-operator toolkit"};
  app.require_subcommand(1);

  std::string input, outdir, cone = "lorentz", kind, suite = "all", xpath, ypath;
  int n = 3, trials = 1000;
  std::uint64_t seed = 0;
  TolArgs tol_args;

  auto* check_z = app.add_subcommand("check-z", "Z-operator membership certificate");
  check_z->add_option("-i,--input", input, "matrix file (.json or CSV)")->required();
  check_z->add_option("--cone", cone, "lorentz or orthant")
      ->check(CLI::IsMember({"lorentz", "orthant"}));
  add_tol_options(check_z, tol_args);

  auto* check_dual = app.add_subcommand("check-dual", "dual-cone membership certificate");
  check_dual->add_option("-i,--input", input, "matrix file (.json or CSV)")->required();
  check_dual->add_option("--cone", cone, "lorentz or orthant")
      ->check(CLI::IsMember({"lorentz", "orthant"}));
  add_tol_options(check_dual, tol_args);

  auto* decompose = app.add_subcommand("decompose", "write the gamma/P/Q decomposition");
  decompose->add_option("-i,--input", input, "matrix file (.json or CSV)")->required();
  decompose->add_option("-o,--output", outdir, "output directory")->required();
  add_tol_options(decompose, tol_args);

  auto* gen = app.add_subcommand("gen", "generate a random sample with provenance");
  gen->add_option("--kind", kind, "z, dual-psd, dual-dyad, or pair")
      ->required()
      ->check(CLI::IsMember({"z", "dual-psd", "dual-dyad", "pair"}));
  gen->add_option("--n", n, "dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "random seed")->envname("CONEZ_SEED");
  gen->add_option("-o,--output", outdir, "output directory")->required();

  auto* pair = app.add_subcommand("pair", "complementarity check and the dyad bridge");
  pair->add_option("-x", xpath, "x vector file (CSV)")->required();
  pair->add_option("-y", ypath, "y vector file (CSV)")->required();
  add_tol_options(pair, tol_args);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "duality, definitional, orlitzky, n2, orthant, or all")
      ->check(CLI::IsMember({"duality", "definitional", "orlitzky", "n2", "orthant", "all"}));
  verify->add_option("--n", n, "dimension")->check(CLI::PositiveNumber);
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed")->envname("CONEZ_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check_z)) return run_check_z(input, cone, tol_args);
    if (app.got_subcommand(check_dual)) return run_check_dual(input, cone, tol_args);
    if (app.got_subcommand(decompose)) return run_decompose(input, outdir, tol_args);
    if (app.got_subcommand(gen)) return run_gen(kind, n, seed, outdir);
    if (app.got_subcommand(pair)) return run_pair(xpath, ypath, tol_args);
    if (app.got_subcommand(verify)) return run_verify(suite, n, trials, seed);
  } catch (const conez::NotMember& e) {
    std::cerr << "NotMember: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
