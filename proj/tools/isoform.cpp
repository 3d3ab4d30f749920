#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "isoform/flagcount.hpp"
#include "isoform/json_io.hpp"
#include "support/acceptance.hpp"

using namespace isoform;

namespace {

enum Exit { ok = 0, usage = 2, no_solution = 3, inconclusive = 4, violation = 5 };

// "-" reads stdin, text starting with '{' is inline JSON, anything else is a path.
Json read_json_argument(const std::string& arg) {
  std::string text;
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!arg.empty() && arg.front() == '{') {
    text = arg;
  } else {
    std::ifstream in(arg);
    require(static_cast<bool>(in), Errc::Parse, "cannot open " + arg);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_json(text);
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::InvariantViolation: return violation;
    case Errc::Exhausted:
    case Errc::NoDeflection: return inconclusive;
    default: return usage;
  }
}

struct SolveArgs {
  std::vector<Int> slots;
  Int c = 1;
  std::string ring;
  std::uint64_t seed = 0;
  bool no_fast_path = false;
};

int run_solve(const SolveArgs& a) {
  const Ring ring = Ring::parse(a.ring);
  const PfisterSpec spec(ring, a.slots);
  const SolutionCertificate cert = solve_pfister({spec, a.c}, a.seed, {!a.no_fast_path});
  std::cout << to_json(cert).dump(2) << '\n';
  std::cerr << "solve: " << to_string(cert.verdict) << " for c=" << ring.reduce(a.c) << " over " << ring.to_string()
            << '\n';
  switch (cert.verdict) {
    case Verdict::solved: return ok;
    case Verdict::no_solution: return no_solution;
    case Verdict::inconclusive: return inconclusive;
  }
  return violation;
}

int run_witt(const std::string& form_arg, std::uint64_t seed) {
  const GramForm q = form_from_json(read_json_argument(form_arg));
  const WittDecomposition wd = q.ring().is_field() ? witt_decompose(q, seed) : witt_decompose_local(q, seed);
  Json out = to_json(wd);
  out["ring"] = to_json(q.ring());
  out["rank"] = q.rank();
  std::cout << out.dump(2) << '\n';
  std::cerr << "witt-decompose: index " << wd.index << ", anisotropic rank " << wd.anisotropic.rank() << '\n';
  return ok;
}

int run_construct(const std::string& input) {
  const Json j = read_json_argument(input);
  require(j.contains("form"), Errc::Parse, "missing field 'form'");
  const GramForm q = form_from_json(j.at("form"));
  const char* key = j.contains("N_basis") ? "N_basis" : "N";
  require(j.contains(key), Errc::Parse, "missing field 'N_basis'");
  const FreeSummand n = certify_free_summand(matrix_from_json(q.ring(), j.at(key)));
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});
  try {
    const ModuleConstruction c = prop_mod_construct(q, n, seed);
    std::cout << to_json(c).dump(2) << '\n';
    std::cerr << "construct-w: generator found, W of rank " << c.result.basis.rows() << '\n';
    return ok;
  } catch (const ExhaustedError& e) {
    Json strata = Json::object();
    for (auto [dim, count] : e.strata()) strata[std::to_string(dim)] = count;
    std::cout << Json{{"error", "Exhausted"}, {"proven", e.proven()}, {"strata", strata}, {"message", e.what()}}.dump(2)
              << '\n';
    std::cerr << "construct-w: " << e.what() << '\n';
    return inconclusive;
  }
}

struct CensusArgs {
  std::string family;
  std::size_t n = 0;
  std::size_t dim2n = 0;
  std::size_t j = 0;
  std::vector<Int> primes{3, 5, 7};
  std::uint64_t seed = 0;
  std::string method = "fiberwise";
};

int run_census(const CensusArgs& a) {
  const Family family = parse_family(a.family);
  const std::size_t ambient = a.dim2n ? a.dim2n : a.n;
  require(ambient > 0, Errc::OutOfRange, "census needs --n or --dim2n");
  require(a.method == "fiberwise" || a.method == "exhaustive", Errc::Parse, "method must be fiberwise or exhaustive");
  std::vector<CensusReport> reports;
  if (family == Family::Z_strata) {
    reports = census_strata(ambient, a.primes, a.seed);
  } else {
    require(a.j > 0, Errc::OutOfRange, "census needs --j");
    reports.push_back(census(family, ambient, a.j, a.primes,
                             a.method == "exhaustive" ? CountMethod::exhaustive : CountMethod::fiberwise));
  }
  std::cout << to_csv(reports);
  std::cerr << "census: point counts over F_q; fitted_degree is a point-count shadow of dimension, not a proof\n";
  return ok;
}

int run_check_group(const SolveArgs& a, std::size_t trials) {
  const Ring ring = Ring::parse(a.ring);
  const GroupLawReport r = check_group_law(PfisterSpec(ring, a.slots), trials, a.seed, {!a.no_fast_path});
  std::cout << to_json(r).dump(2) << '\n';
  std::cerr << "check-group: " << r.closure_checks << " closure checks, " << r.violations.size() << " violations, "
            << r.inconclusive << " inconclusive\n";
  return r.ok() ? ok : violation;
}

int run_selftest(const std::string& budget, bool inject_fault) {
  acceptance::Options options;
  require(budget == "quick" || budget == "full", Errc::Parse, "budget must be quick or full");
  options.budget = budget == "full" ? acceptance::Budget::full : acceptance::Budget::quick;
  options.inject_fault = inject_fault;
  Json criteria = Json::array();
  bool all = true;
  for (int id = 1; id <= acceptance::kCriteria; ++id) {
    const auto r = acceptance::run_criterion(id, options);
    std::cerr << acceptance::format_result(r);
    criteria.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"notes", r.notes}});
    all = all && r.passed;
  }
  std::cout << Json{{"budget", budget}, {"passed", all}, {"criteria", criteria}}.dump(2) << '\n';
  return all ? ok : violation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quadratic-form toolkit over F_p and Z/p^k"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve Q = c for a Pfister form, emit a JSON certificate");
  solve_cmd->add_option("--pfister", solve.slots, "Pfister slots a_1,...,a_m")->delimiter(',')->required();
  solve_cmd->add_option("--c", solve.c, "Target unit c")->required();
  solve_cmd->add_option("--ring", solve.ring, "fp:p or zpk:p,k")->required();
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_flag("--no-fast-path", solve.no_fast_path, "Always run the full construction");

  std::string form_arg;
  std::uint64_t witt_seed = 0;
  auto* witt_cmd = app.add_subcommand("witt-decompose", "Witt decomposition of a form given as JSON");
  witt_cmd->add_option("--form", form_arg, "Inline JSON, a file path, or - for stdin")->required();
  witt_cmd->add_option("--seed", witt_seed, "Random seed");

  std::string construct_input;
  auto* construct_cmd =
      app.add_subcommand("construct-w", "Free isotropic summand W and generator of W ∩ N from JSON {form, N_basis, seed}");
  construct_cmd->add_option("--input", construct_input, "Inline JSON, a file path, or - for stdin")->required();

  CensusArgs census_args;
  auto* census_cmd = app.add_subcommand("census", "Point counts of flag varieties as CSV");
  census_cmd->add_option("--family", census_args.family, "x, x-iso, y-iso or z")->required();
  census_cmd->add_option("--n", census_args.n, "Ambient dimension");
  census_cmd->add_option("--dim2n", census_args.dim2n, "Ambient dimension (even)");
  census_cmd->add_option("--j", census_args.j, "Flag length or subspace dimension");
  census_cmd->add_option("--primes", census_args.primes, "Comma-separated odd primes")->delimiter(',');
  census_cmd->add_option("--seed", census_args.seed, "Seed for the random P of the z family");
  census_cmd->add_option("--method", census_args.method, "fiberwise or exhaustive");

  SolveArgs group;
  std::size_t trials = 10;
  auto* group_cmd = app.add_subcommand("check-group", "Randomized subgroup check of the represented units");
  group_cmd->add_option("--pfister", group.slots, "Pfister slots a_1,...,a_m")->delimiter(',')->required();
  group_cmd->add_option("--ring", group.ring, "fp:p or zpk:p,k")->required();
  group_cmd->add_option("--trials", trials, "Number of random pairs");
  group_cmd->add_option("--seed", group.seed, "Random seed");
  group_cmd->add_flag("--no-fast-path", group.no_fast_path, "Always run the full construction");

  std::string budget = "quick";
  bool inject_fault = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest_cmd->add_option("--budget", budget, "quick or full");
  selftest_cmd->add_flag("--inject-fault", inject_fault, "Corrupt one isometry to exercise failure reporting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return usage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*witt_cmd) return run_witt(form_arg, witt_seed);
    if (*construct_cmd) return run_construct(construct_input);
    if (*census_cmd) return run_census(census_args);
    if (*group_cmd) return run_check_group(group, trials);
    if (*selftest_cmd) return run_selftest(budget, inject_fault);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const int code = exit_for(e);
    if (code == usage) std::cerr << app.help();
    return code;
  }
  return usage;
}
