#include "triad_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "render.hpp"
#include "selftest.hpp"
#include "triad/contractions.hpp"
#include "triad/criteria.hpp"
#include "triad/filter.hpp"
#include "triad/generators.hpp"
#include "triad/io.hpp"
#include "triad/reducibility.hpp"
#include "triad/schmidt.hpp"

namespace triad::cli {

namespace {

struct Options {
  bool json = false;
  Tolerances tol;
  std::string file;
  std::string mode = "general";
  double filter_tol = -1.0;
  int max_iter = 10000;
  int max_depth = 0;
  std::string klass;
  int k = 2;
  std::optional<std::uint64_t> seed;
  int rank = 0;
  int terms = 0;
  bool hermitian = false;
  bool quick = false;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TRIAD_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 0;
}

BipartiteOperator load(const std::string& file, std::istream& in) {
  if (file == "-") return read_bipartite(in);
  std::ifstream f(file);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open " + file);
  return read_bipartite(f);
}

void emit(const Json& report, const Options& opt, std::ostream& out) {
  if (opt.json) {
    out << dump(report) << '\n';
  } else {
    render_text(report, out);
  }
}

int cmd_classify(const Options& opt, std::istream& in, std::ostream& out) {
  const BipartiteOperator g = load(opt.file, in);
  emit(Json(classify(g, opt.tol)), opt, out);
  return kSuccess;
}

int cmd_bounds(const Options& opt, std::istream& in, std::ostream& out) {
  const BipartiteOperator g = load(opt.file, in);
  const TriadClassification c = classify(g, opt.tol);
  Json bounds = Json::array();
  bool holds = true;
  for (const BoundReport& b : {bound_gamma_pt(g, opt.tol), bound_realign_sq(g, opt.tol)}) {
    holds = holds && b.bound_holds;
    bounds.push_back(b);
  }
  if (c.any_triad()) {
    const BoundReport b = bound_triad(g, c, opt.tol);
    holds = holds && b.bound_holds;
    bounds.push_back(b);
  }
  emit(Json{{"classification", c}, {"bounds", bounds}, {"ppt_pair", ppt_pair_forces_invariance(g, opt.tol)}}, opt, out);
  return holds ? kSuccess : kNumerical;
}

int cmd_schmidt(const Options& opt, std::istream& in, std::ostream& out) {
  const BipartiteOperator g = load(opt.file, in);
  emit(Json(opt.hermitian ? hermitian_schmidt(g, opt.tol) : schmidt(g, opt.tol)), opt, out);
  return kSuccess;
}

int cmd_filter(const Options& opt, std::istream& in, std::ostream& out) {
  const BipartiteOperator g = load(opt.file, in);
  FilterOptions fo;
  fo.tol = opt.tol;
  fo.filter_tol = opt.filter_tol > 0.0 ? opt.filter_tol : opt.tol.filter;
  fo.max_iter = opt.max_iter;
  const FilterResult r = sinkhorn_filter(g, parse_filter_mode(opt.mode), fo);
  emit(Json(r), opt, out);
  return r.converged ? kSuccess : kNumerical;
}

int cmd_decompose(const Options& opt, std::istream& in, std::ostream& out) {
  const BipartiteOperator g = load(opt.file, in);
  const DecompositionTree t = decompose(g, opt.max_depth, opt.tol);
  const double res = tree_reconstruction_residual(t);
  emit(Json{{"tree", t}, {"leaves", t.leaves().size()}, {"reconstruction_residual", res}}, opt, out);
  return kSuccess;
}

int cmd_certify(const Options& opt, std::istream& in, std::ostream& out) {
  const BipartiteOperator g = load(opt.file, in);
  const TriadClassification c = classify(g, opt.tol);
  Json report{{"classification", c},
              {"equal_schmidt", equal_schmidt_certificate(g, c, opt.tol)},
              {"rank_bound", rank_bound_check(g, c, opt.tol)}};
  int code = kSuccess;
  try {
    const ExtractionResult e = minimal_rank_extract(g, c, opt.tol);
    report["extraction"] = e;
    if (!e.ok) code = kNumerical;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionNotMet) throw;
    report["extraction"] = Json{{"applies", false}, {"reason", e.what()}};
  }
  emit(report, opt, out);
  return code;
}

int cmd_generate(const Options& opt, std::ostream& out) {
  const std::uint64_t seed = opt.seed.value_or(default_seed());
  const int k = opt.k;
  Json j;
  if (opt.klass == "density") {
    j = random_density(k, opt.rank > 0 ? opt.rank : k * k, seed);
  } else if (opt.klass == "separable") {
    j = random_separable(k, opt.terms > 0 ? opt.terms : k * k, seed).state;
  } else if (opt.klass == "spc") {
    j = random_spc(k, seed);
  } else if (opt.klass == "invariant") {
    j = random_invariant(k, seed);
  } else if (opt.klass == "ppt") {
    j = random_ppt(k, seed);
  } else if (opt.klass.rfind("canonical:", 0) == 0) {
    j = canonical(opt.klass.substr(10), k);
  } else {
    throw Error(ErrorCode::UnknownName, "unknown class " + opt.klass);
  }
  out << dump(j) << '\n';
  return kSuccess;
}

int cmd_selftest(const Options& opt, std::ostream& out) {
  const Json r = run_selftest(opt.quick, opt.seed.value_or(default_seed()), opt.tol);
  if (opt.json) {
    out << dump(r) << '\n';
  } else {
    for (const Json& s : r.at("suites")) {
      out << (s.at("passed").get<bool>() ? "PASS " : "FAIL ") << s.at("name").get<std::string>();
      if (s.contains("worst")) out << "  cases=" << s.at("cases") << " worst=" << s.at("worst").get<double>();
      if (s.contains("error")) out << "  error=" << s.at("error").get<std::string>();
      out << '\n';
    }
  }
  return r.at("passed").get<bool>() ? kSuccess : kNumerical;
}

bool usage_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::UnknownName || code == ErrorCode::BadRank ||
         code == ErrorCode::InvalidArgument;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability and filtering toolkit for bipartite operators", "triad"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "JSON output");
  app.add_option("--tol-herm", opt.tol.herm);
  app.add_option("--tol-psd", opt.tol.psd);
  app.add_option("--tol-rank", opt.tol.rank);
  app.add_option("--tol-inv", opt.tol.inv);
  app.add_option("--tol-ccnr", opt.tol.ccnr);
  app.add_option("--tol-filter", opt.tol.filter);
  app.add_option("--tol-ds", opt.tol.ds);
  app.add_option("--tol-eq", opt.tol.eq);
  app.add_option("--tol-split", opt.tol.split);
  app.add_option("--tol-bound", opt.tol.bound);
  app.add_option("--tol-trace", opt.tol.trace);

  auto with_file = [&opt](CLI::App* sub) {
    sub->add_option("file", opt.file, "operator JSON, - for stdin")->required();
    return sub;
  };
  CLI::App* classify_cmd = with_file(app.add_subcommand("classify", "triad class membership and CCNR value"));
  CLI::App* bounds_cmd = with_file(app.add_subcommand("bounds", "spectral-norm bounds"));
  CLI::App* schmidt_cmd = with_file(app.add_subcommand("schmidt", "operator Schmidt decomposition"));
  schmidt_cmd->add_flag("--hermitian", opt.hermitian, "Hermitian Schmidt form");
  CLI::App* filter_cmd = with_file(app.add_subcommand("filter", "local filtering normal form"));
  filter_cmd->add_option("--mode", opt.mode)->check(CLI::IsMember({"general", "symmetric", "conjugate", "left"}));
  filter_cmd->add_option("--tol", opt.filter_tol, "marginal residual target");
  filter_cmd->add_option("--max-iter", opt.max_iter)->check(CLI::PositiveNumber);
  CLI::App* decompose_cmd = with_file(app.add_subcommand("decompose", "recursive complete-reducibility split"));
  decompose_cmd->add_option("--max-depth", opt.max_depth);
  CLI::App* certify_cmd = with_file(app.add_subcommand("certify", "separability certificates"));
  CLI::App* generate_cmd = app.add_subcommand("generate", "seeded operator generators");
  generate_cmd->add_option("--class", opt.klass, "density|separable|spc|invariant|ppt|canonical:NAME")->required();
  generate_cmd->add_option("--k", opt.k)->check(CLI::Range(1, 64));
  generate_cmd->add_option("--seed", opt.seed);
  generate_cmd->add_option("--rank", opt.rank);
  generate_cmd->add_option("--terms", opt.terms);
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "invariant sweeps");
  selftest_cmd->add_flag("--quick", opt.quick);
  selftest_cmd->add_option("--seed", opt.seed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "triad: " << e.what() << '\n';
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return kUsage;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(opt, in, out);
    if (bounds_cmd->parsed()) return cmd_bounds(opt, in, out);
    if (schmidt_cmd->parsed()) return cmd_schmidt(opt, in, out);
    if (filter_cmd->parsed()) return cmd_filter(opt, in, out);
    if (decompose_cmd->parsed()) return cmd_decompose(opt, in, out);
    if (certify_cmd->parsed()) return cmd_certify(opt, in, out);
    if (generate_cmd->parsed()) return cmd_generate(opt, out);
    if (selftest_cmd->parsed()) return cmd_selftest(opt, out);
  } catch (const Error& e) {
    err << "triad: " << e.what() << '\n';
    if (usage_error(e.code())) return kUsage;
    emit(Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}, opt, out);
    return kNumerical;
  }
  return kUsage;
}

}  // namespace triad::cli
