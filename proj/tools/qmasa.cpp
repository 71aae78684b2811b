// Command-line batch runner for the verification suites and experiments.
//
// Output is machine readable (JSON lines or CSV) and byte-deterministic for
// a fixed invocation, independent of --jobs; --timing adds wall-clock fields
// and is excluded from the determinism contract.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qmasa/suites.hpp"

using qmasa::Rational;

namespace {

using qmasa::Overrides;
using qmasa::SuiteOptions;
using qmasa::SuiteOutput;
using qmasa::VerdictRecord;

struct CommonOpts {
  std::string format = "json";
  std::string out;
  std::string config;
  std::vector<std::string> sets;
  int jobs = 0;  // 0 -> hardware concurrency
  bool timing = false;
  Overrides flags;  // typed flags, inserted only when provided
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_kv(const std::string& line) {
  const std::size_t eq = line.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("malformed override (want key=value): " + line);
  std::string key = trim(line.substr(0, eq));
  std::string val = trim(line.substr(eq + 1));
  if (key.empty()) throw std::runtime_error("empty override key in: " + line);
  return {key, val};
}

Overrides parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file: " + path);
  Overrides o;
  std::string line;
  while (std::getline(f, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto [k, v] = split_kv(line);
    o[k] = v;
  }
  return o;
}

// Precedence: config file < typed flags < --set.
SuiteOptions resolve_options(const CommonOpts& c) {
  SuiteOptions so;
  so.jobs = c.jobs > 0 ? c.jobs
                       : std::max(1u, std::thread::hardware_concurrency());
  if (!c.config.empty())
    for (auto& [k, v] : parse_config_file(c.config)) so.overrides[k] = v;
  for (const auto& [k, v] : c.flags) so.overrides[k] = v;
  for (const std::string& s : c.sets) {
    auto [k, v] = split_kv(s);
    so.overrides[k] = v;
  }
  return so;
}

// Registers the shared flags on a subcommand; typed values land in c.flags
// only when the user passes them, so suite defaults stay in charge.
void attach_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--format", c.format, "Record format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "Write output to this file instead of stdout");
  sub->add_option("--config", c.config,
                  "Flat key=value file with parameter overrides");
  sub->add_option("--set", c.sets,
                  "Extra override key=value (repeatable, highest precedence)");
  sub->add_option("--jobs", c.jobs, "Worker threads (default: all cores)");
  sub->add_flag("--timing", c.timing, "Emit runtime_ms fields");
  static const std::vector<std::string> keys = {
      "L",     "p",    "q",   "dim",  "trunc", "depth", "delta",
      "alpha", "beta", "tol", "seed", "seeds", "x",     "y"};
  for (const std::string& key : keys)
    sub->add_option_function<std::string>(
        "--" + key,
        [&c, key](const std::string& v) { c.flags[key] = v; },
        "Override parameter '" + key + "'");
}

int write_output(const std::string& body, const std::string& out) {
  if (out.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return 2;
  }
  f << body;
  return 0;
}

std::string render_records(const std::vector<VerdictRecord>& recs,
                           const CommonOpts& c) {
  std::ostringstream os;
  if (c.format == "csv") {
    os << qmasa::verdict_csv_header(c.timing) << "\n";
    for (const auto& r : recs) os << qmasa::verdict_csv(r, c.timing) << "\n";
  } else {
    for (const auto& r : recs) os << qmasa::verdict_json(r, c.timing) << "\n";
  }
  return os.str();
}

// Exit code contract: 0 iff no record failed (anomalies are tolerated),
// 2 on usage or I/O errors.
int emit_records(const std::vector<VerdictRecord>& recs, const CommonOpts& c) {
  const int io = write_output(render_records(recs, c), c.out);
  if (io != 0) return io;
  for (const auto& r : recs)
    if (r.failed()) return 1;
  return 0;
}

const std::string& find_table(const SuiteOutput& out, const std::string& name) {
  for (const auto& [n, body] : out.tables)
    if (n == name) return body;
  throw std::runtime_error("suite produced no table named '" + name + "'");
}

int emit_table_and_code(const SuiteOutput& out, const std::string& table,
                        const CommonOpts& c) {
  const int io = write_output(find_table(out, table), c.out);
  if (io != 0) return io;
  return out.ok() ? 0 : 1;
}

std::vector<Rational> parse_rat_list(const std::string& s) {
  std::vector<Rational> out;
  std::string cur;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (!trim(cur).empty()) out.push_back(qmasa::rat_parse(trim(cur)));
      cur.clear();
    } else {
      cur += s[i];
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qmasa: exact verification suites for the deformed radial subalgebra "
      "and q-Fock intertwining-decay experiments"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Run verification suites and emit verdict records");
  auto verify_common = std::make_shared<CommonOpts>();
  auto verify_suites = std::make_shared<std::vector<std::string>>();
  verify->add_option("suite", *verify_suites,
                     "Suite ids (or 'all'): hecke-core radial lemma24 "
                     "pukanszky fock-core popa-orthogonal popa-general density")
      ->required();
  attach_common(verify, *verify_common);
  verify->callback([&exit_code, verify_common, verify_suites] {
    SuiteOptions so = resolve_options(*verify_common);
    std::vector<std::string> names = *verify_suites;
    if (names.size() == 1 && names[0] == "all") names = qmasa::suite_names();
    std::vector<VerdictRecord> all;
    for (const std::string& name : names) {
      SuiteOutput out = qmasa::run_suite(name, so);
      all.insert(all.end(), out.records.begin(), out.records.end());
    }
    exit_code = emit_records(all, *verify_common);
  });

  // ---- radial ---------------------------------------------------------------
  auto* radial = app.add_subcommand(
      "radial", "Radial-subalgebra moment and density tables");
  radial->require_subcommand(1);

  auto* moments = radial->add_subcommand(
      "moments", "CSV moment comparison: n,p,exact,quadrature,abs_err");
  auto moments_common = std::make_shared<CommonOpts>();
  attach_common(moments, *moments_common);
  moments->callback([&exit_code, moments_common] {
    SuiteOptions so = resolve_options(*moments_common);
    SuiteOutput out = qmasa::run_density(so);
    exit_code = emit_table_and_code(out, "moments", *moments_common);
  });

  auto* density = radial->add_subcommand(
      "density", "CSV of the normalized spectral density: x,density");
  auto density_common = std::make_shared<CommonOpts>();
  auto density_grid = std::make_shared<int>(200);
  density->add_option("--grid", *density_grid, "Number of sample intervals")
      ->capture_default_str();
  attach_common(density, *density_common);
  density->callback([&exit_code, density_common, density_grid] {
    SuiteOptions so = resolve_options(*density_common);
    const int L = qmasa::suite_detail::opt_int(so.overrides, "L", 3);
    const Rational p =
        qmasa::suite_detail::opt_rat(so.overrides, "p", Rational(0));
    qmasa::DensityReport rep = qmasa::density_report(L, p, 0, 1e-12);
    std::ostringstream csv;
    if (rep.anomaly) csv << "# density-formula-anomaly\n";
    csv << "x,density\n";
    if (!rep.anomaly) {
      const double pd = qmasa::rat_double(p);
      const int n = std::max(1, *density_grid);
      for (int i = 0; i <= n; ++i) {
        const double x =
            rep.support_lo + (rep.support_hi - rep.support_lo) * i / n;
        csv << qmasa::fmt_double(x) << ","
            << qmasa::fmt_double(qmasa::density_unnormalized(L, pd, x) /
                                 rep.normalization)
            << "\n";
      }
    }
    exit_code = write_output(csv.str(), density_common->out);
  });

  auto* lemma24 = radial->add_subcommand(
      "lemma24", "CSV truncation-residual sweep: delta,K,residual");
  auto lemma24_common = std::make_shared<CommonOpts>();
  attach_common(lemma24, *lemma24_common);
  lemma24->callback([&exit_code, lemma24_common] {
    SuiteOptions so = resolve_options(*lemma24_common);
    SuiteOutput out = qmasa::run_lemma24(so);
    exit_code = emit_table_and_code(out, "residuals", *lemma24_common);
  });

  // ---- pukanszky ------------------------------------------------------------
  auto* puk = app.add_subcommand(
      "pukanszky", "Orbit-relation, gram, expansion and intertwiner checks");
  auto puk_common = std::make_shared<CommonOpts>();
  auto puk_check = std::make_shared<std::string>("all");
  puk->add_option("check", *puk_check,
                  "One of: relations gram expansion intertwiner cross-level "
                  "exhaustion all")
      ->check(CLI::IsMember({"relations", "gram", "expansion", "intertwiner",
                             "cross-level", "exhaustion", "all"}));
  attach_common(puk, *puk_common);
  puk->callback([&exit_code, puk_common, puk_check] {
    using namespace qmasa::suite_detail;
    SuiteOptions so = resolve_options(*puk_common);
    const std::string& check = *puk_check;
    if (check == "all") {
      SuiteOutput out = qmasa::run_pukanszky(so);
      exit_code = emit_records(out.records, *puk_common);
      return;
    }
    const std::uint64_t seed = opt_seed(so.overrides, "seed", 12345);
    const int seeds = opt_int(so.overrides, "seeds", 5);
    const int depth = opt_int(so.overrides, "depth", 5);
    const int window = opt_int(so.overrides, "trunc", 4);
    std::vector<std::function<std::vector<VerdictRecord>()>> jobs;
    if (check == "relations") {
      for (int L : {3, 4})
        for (int t = 0; t < seeds; ++t)
          jobs.push_back([=] { return pk_relations_task(L, t, seed + 977 * t); });
    } else if (check == "gram") {
      for (int L : {3, 4}) jobs.push_back([=] { return pk_gram_task(L, seed); });
    } else if (check == "expansion") {
      jobs.push_back([=] { return pk_expansion_task(seed, window); });
    } else if (check == "intertwiner") {
      jobs.push_back([=] { return pk_intertwiner_task(seed, depth, window); });
      jobs.push_back([] { return pk_toeplitz_task(); });
    } else if (check == "cross-level") {
      for (int L : {3, 4})
        jobs.push_back([=] { return pk_crosslevel_task(L, seed, window); });
    } else {  // exhaustion
      jobs.push_back([=] {
        return pk_exhaustion_task(opt_int(so.overrides, "L", 3), window);
      });
    }
    std::vector<VerdictRecord> recs = run_tasks(
        jobs.size(), so.jobs, [&](std::size_t i) { return jobs[i](); });
    exit_code = emit_records(recs, *puk_common);
  });

  // ---- fock -----------------------------------------------------------------
  auto* fock = app.add_subcommand(
      "fock", "q-Fock core checks and operator matrix export");
  auto fock_common = std::make_shared<CommonOpts>();
  auto fock_check = std::make_shared<std::string>("all");
  auto fock_xi = std::make_shared<std::string>("1");
  fock->add_option("check", *fock_check,
                   "One of: positivity oracle adjoint wick quantisation growth "
                   "matrix all")
      ->check(CLI::IsMember({"positivity", "oracle", "adjoint", "wick",
                             "quantisation", "growth", "matrix", "all"}));
  fock->add_option("--xi", *fock_xi,
                   "Field direction for 'matrix', comma rationals, e.g. 2/3,1")
      ->capture_default_str();
  attach_common(fock, *fock_common);
  fock->callback([&exit_code, fock_common, fock_check, fock_xi] {
    using namespace qmasa::suite_detail;
    SuiteOptions so = resolve_options(*fock_common);
    const std::string& check = *fock_check;
    if (check == "matrix") {
      const int d = opt_int(so.overrides, "dim", 2);
      const int trunc = opt_int(so.overrides, "trunc", 4);
      const Rational q = opt_rat(so.overrides, "q", qmasa::rat(1, 2));
      std::vector<Rational> xi = parse_rat_list(*fock_xi);
      if (static_cast<int>(xi.size()) > d)
        throw std::runtime_error("--xi has more entries than --dim");
      xi.resize(d, Rational(0));
      exit_code = write_output(
          qmasa::matrix_csv(qmasa::field_matrix(xi, q, d, trunc)),
          fock_common->out);
      return;
    }
    if (check == "all") {
      SuiteOutput out = qmasa::run_fock_core(so);
      exit_code = emit_records(out.records, *fock_common);
      return;
    }
    const int nmax = opt_int(so.overrides, "depth", 6);
    std::vector<std::function<std::vector<VerdictRecord>()>> jobs;
    if (check == "positivity") {
      for (int d : {1, 2, 3})
        for (const Rational& q :
             {qmasa::rat(-9, 10), qmasa::rat(-1, 2), Rational(0),
              qmasa::rat(1, 2), qmasa::rat(9, 10)})
          jobs.push_back([=] { return fock_positivity_task(d, q, nmax); });
    } else if (check == "oracle") {
      jobs.push_back([] { return fock_oracle_task(); });
    } else if (check == "adjoint") {
      for (const Rational& q : {qmasa::rat(1, 2), qmasa::rat(-1, 2)})
        jobs.push_back([=] { return fock_adjoint_ccr_task(q); });
    } else if (check == "wick") {
      for (const Rational& q : {qmasa::rat(1, 2), qmasa::rat(-1, 2)})
        jobs.push_back([=] { return fock_wick_task(q); });
    } else if (check == "quantisation") {
      jobs.push_back([] { return fock_quantisation_task(); });
    } else {  // growth
      jobs.push_back([] { return fock_growth_task(); });
    }
    std::vector<VerdictRecord> recs = run_tasks(
        jobs.size(), so.jobs, [&](std::size_t i) { return jobs[i](); });
    exit_code = emit_records(recs, *fock_common);
  });

  // ---- popa -----------------------------------------------------------------
  auto* popa = app.add_subcommand(
      "popa", "Intertwining-decay experiments on the truncated q-Fock space");
  popa->require_subcommand(1);

  auto* orth = popa->add_subcommand(
      "orthogonal", "Orthogonal configuration: exact zero law and sweeps");
  auto orth_common = std::make_shared<CommonOpts>();
  auto orth_table = std::make_shared<std::string>();
  orth->add_option("--table", *orth_table,
                   "Emit a CSV table instead of records: decay|jacobi")
      ->check(CLI::IsMember({"decay", "jacobi"}));
  attach_common(orth, *orth_common);
  orth->callback([&exit_code, orth_common, orth_table] {
    SuiteOptions so = resolve_options(*orth_common);
    SuiteOutput out = qmasa::run_popa_orthogonal(so);
    if (!orth_table->empty())
      exit_code = emit_table_and_code(out, *orth_table, *orth_common);
    else
      exit_code = emit_records(out.records, *orth_common);
  });

  auto* gen = popa->add_subcommand(
      "general", "General configuration: envelope and decay sweep");
  auto gen_common = std::make_shared<CommonOpts>();
  auto gen_table = std::make_shared<std::string>();
  gen->add_option("--table", *gen_table,
                  "Emit a CSV table instead of records: envelope|decay")
      ->check(CLI::IsMember({"envelope", "decay"}));
  attach_common(gen, *gen_common);
  gen->callback([&exit_code, gen_common, gen_table] {
    SuiteOptions so = resolve_options(*gen_common);
    SuiteOutput out = qmasa::run_popa_general(so);
    if (!gen_table->empty())
      exit_code = emit_table_and_code(out, *gen_table, *gen_common);
    else
      exit_code = emit_records(out.records, *gen_common);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
