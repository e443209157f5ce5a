#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "minf/convolve.hpp"
#include "minf/divisors.hpp"
#include "minf/explicit_formula.hpp"
#include "minf/factorint.hpp"
#include "minf/sieve.hpp"
#include "minf/walk.hpp"
#include "minf/zetafun.hpp"
#include "output.hpp"
#include "verify.hpp"

namespace minf::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kOutputDirEnv = "MINF_OUTPUT_DIR";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  u128 v = 0;
  try {
    v = parse_u128(text);
  } catch (const std::exception&) {
    throw UsageError(what + ": expected a non-negative integer, got '" + text + "'");
  }
  if (v > UINT64_MAX) throw UsageError(what + ": exceeds 2^64 - 1");
  return static_cast<std::uint64_t>(v);
}

// "a:b:n" -> n evenly spaced points from a to b inclusive.
std::vector<double> parse_grid(const std::string& spec, const std::string& what) {
  std::stringstream ss(spec);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
    throw UsageError(what + ": expected a:b:n, got '" + spec + "'");
  try {
    const double lo = std::stod(a), hi = std::stod(b);
    const auto count = static_cast<std::size_t>(std::stoul(n));
    if (count == 0) throw UsageError(what + ": grid needs at least one point");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
      out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(what + ": malformed grid '" + spec + "'");
  }
}

std::vector<double> parse_list(const std::string& spec, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": malformed value '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

FnTable named_table(const std::string& name, std::size_t limit) {
  if (name == "one") return constant_one(limit);
  if (name == "delta") return delta(limit);
  if (name == "id") return identity_fn(limit);
  return table_of(parse_arith_kind(name), limit);
}

// Everything a subcommand needs after parsing, plus the provenance header.
struct Invocation {
  std::string command;
  json config = json::object();
  json inputs = json::object();
  std::string output;
  std::string format = "csv";

  Format fmt() const { return format == "json" ? Format::Json : Format::Csv; }

  void add_input(const std::string& path) { inputs[path] = "fnv1a64:" + file_digest(path); }

  std::string header_line() const {
    json h;
    h["minf_version"] = kVersion;
    h["command"] = command;
    h["config"] = config;
    h["inputs"] = inputs;
    if (fmt() == Format::Json) return h.dump();
    return "# minf " + std::string(kVersion) + " " + h.dump();
  }

  fs::path output_path() const {
    fs::path p(output);
    if (p.is_relative()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
    }
    return p;
  }
};

// Records every option of the chosen subcommand, given or defaulted, in declaration order.
json resolved_config(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
    } else {
      value = opt->get_default_str();
    }
    cfg[names.front()] = value;
  }
  return cfg;
}

// Sends a table either to stdout or to a header-stamped output file.
void emit(const Invocation& inv, const Table& table, std::ostream& out) {
  if (inv.output.empty()) {
    write_rows(out, table, inv.fmt());
    return;
  }
  OutputFile file(inv.output_path());
  file.stream() << inv.header_line() << '\n';
  write_rows(file.stream(), table, inv.fmt());
  file.commit();
}

void validate_output_target(const Invocation& inv) {
  if (inv.output.empty()) return;
  const fs::path parent = inv.output_path().parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw IoError("output directory does not exist: " + parent.string());
}

void require_readable(const std::string& path, const std::string& what) {
  if (!fs::is_regular_file(path)) throw IoError(what + " not found: " + path);
}

Table series_table() { return Table{{"sigma", "t", "re", "im", "tail_bound", "check", "slack"}, {}}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"minf: the modified Moebius function mu_inf, its divisor systems, convolutions,\n"
               "summatory function and numerical checks.\n\n"
               "Output: CSV (default) or JSON lines via --format. With --output FILE, the file starts\n"
               "with a provenance header line (version, resolved config, input digests); a relative\n"
               "FILE is placed under $" + std::string(kOutputDirEnv) + " when that is set.\n"
               "Exit status: 0 ok, 1 verification failure, 2 usage error, 3 I/O error.",
               "minf"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", kVersion);

  Invocation inv;
  int threads = 0;
  auto common = [&](CLI::App* sub, bool with_threads) {
    sub->add_option("--output,-o", inv.output, "Write to FILE instead of stdout");
    sub->add_option("--format", inv.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (with_threads) sub->add_option("--threads", threads, "Worker threads (0 = machine parallelism)");
  };

  // factor
  std::string n_text;
  auto* factor = app.add_subcommand("factor", "Prime factorization of a 64-bit integer (columns p,exponent)");
  factor->add_option("--n", n_text, "Integer in [1, 2^64 - 1]")->required();
  common(factor, false);

  // mu
  std::string kind_name = "mu_inf";
  std::string to_text;
  auto* mu = app.add_subcommand("mu", "Pointwise value of an arithmetic function (bare value, or n,value with --to)");
  mu->add_option("--n", n_text, "Argument")->required();
  mu->add_option("--to", to_text, "Tabulate n..to instead of a single value");
  mu->add_option("--kind", kind_name, "mu, mu_inf, tau_inf, sigma_inf, tau_bb, sigma_bb");
  common(mu, false);

  // divisors
  std::string system_name = "infinitary";
  auto* divs = app.add_subcommand("divisors", "Divisors of n in a divisor system (column d)");
  divs->add_option("--n", n_text, "Argument")->required();
  divs->add_option("--system", system_name, "infinitary, unitary, biunitary, all");
  common(divs, false);

  // convolve
  std::string conv_name = "infinitary", f_name = "mu_inf", g_name = "one", pool_text = "one,mu_inf";
  std::size_t limit = 100;
  bool want_inverse = false, want_witness = false;
  auto* conv = app.add_subcommand("convolve",
                                  "Dirichlet / infinitary / bi-unitary products and inverses (columns n,value;\n"
                                  "--witness: f,g,h,n,left,right)");
  conv->add_option("--kind", conv_name, "dirichlet, infinitary, biunitary");
  conv->add_option("--f", f_name, "one, delta, id, or an arithmetic function name");
  conv->add_option("--g", g_name, "Second factor");
  conv->add_option("--limit", limit, "Tabulate n = 1..limit");
  conv->add_flag("--inverse", want_inverse, "Output the inverse of f instead of f*g");
  conv->add_flag("--witness", want_witness, "Search the pool for a non-associative triple");
  conv->add_option("--pool", pool_text, "Comma-separated function names for --witness");
  common(conv, true);

  // scan
  std::string x_max_text;
  std::uint64_t segment_size = kDefaultSegmentSize, checkpoint_every = kDefaultCheckpointEvery;
  std::string checkpoint_file, resume_file;
  bool use_reference = false;
  auto* scan_cmd = app.add_subcommand("scan",
                                      "Summatory scan (columns x,msum,ratio,min_ratio,max_ratio,wm_over_logx)");
  scan_cmd->add_option("--kind", kind_name, "Arithmetic function");
  scan_cmd->add_option("--x-max", x_max_text, "Upper end of the scan")->required();
  scan_cmd->add_option("--segment-size", segment_size, "Sieve segment length (>= 65536)");
  scan_cmd->add_option("--checkpoint-every", checkpoint_every, "Record cadence");
  scan_cmd->add_option("--checkpoint-file", checkpoint_file, "Rewrite this checkpoint at every record");
  scan_cmd->add_option("--resume", resume_file, "Continue from a checkpoint file");
  scan_cmd->add_flag("--reference", use_reference, "Use the serial reference implementation");
  common(scan_cmd, true);

  // series
  std::string mode = "zeta", sigma_grid_text, t_grid_text, depths_text = "1,2,3";
  double sigma = 2, t = 0;
  std::uint64_t terms = 1'000'000;
  int depth = -1;
  auto* series = app.add_subcommand("series",
                                    "zeta, zeta_prime, m_product, m_partial, f_series, bounds\n"
                                    "(columns sigma,t,re,im,tail_bound,check,slack)");
  series->add_option("--mode", mode, "What to evaluate")
      ->check(CLI::IsMember({"zeta", "zeta_prime", "m_product", "m_partial", "f_series", "bounds"}));
  series->add_option("--sigma", sigma, "Real part");
  series->add_option("--t", t, "Imaginary part");
  series->add_option("--sigma-grid", sigma_grid_text, "a:b:n grid of real parts");
  series->add_option("--t-grid", t_grid_text, "a:b:n grid of imaginary parts");
  series->add_option("--N", terms, "Terms for m_partial");
  series->add_option("--J", depth, "Product depth for m_product (-1 = automatic)");
  series->add_option("--depths", depths_text, "Tail depths J checked by --mode bounds");
  common(series, true);

  // explicit
  std::string zeros_file, explicit_kind = "classical";
  int layers = 2;
  double cutoff = 100, x_from = 10, x_to = 1000, x_step = 10;
  auto* expl = app.add_subcommand("explicit", "Truncated explicit formula vs sieve (columns x,measured,explicit_sum,abs_err)");
  expl->add_option("--zeros", zeros_file, "Zero ordinates file")->required();
  expl->add_option("--kind", explicit_kind, "classical or modified");
  expl->add_option("--J", layers, "Layers for the modified formula");
  expl->add_option("--T", cutoff, "Ordinate cutoff");
  expl->add_option("--x-from", x_from, "First x");
  expl->add_option("--x-to", x_to, "Last x");
  expl->add_option("--x-step", x_step, "Grid step");
  common(expl, false);

  // walk
  std::uint64_t steps = 10000, trials = 100000, seed = 1, n_max = 1'000'000;
  std::string c_text = "1,2,4", scan_file;
  bool lil = false;
  auto* walk = app.add_subcommand("walk",
                                  "Random-walk model (columns c,empirical_prob,gaussian_prob,cheb_bound,slack;\n"
                                  "--lil: n,quantile25,median,quantile75,m_inf_ratio)");
  walk->add_option("--n", steps, "Steps per walk");
  walk->add_option("--trials", trials, "Number of walks");
  walk->add_option("--seed", seed, "RNG seed");
  walk->add_option("--c", c_text, "Comma-separated multiples of sqrt(n)");
  walk->add_flag("--lil", lil, "Iterated-logarithm scan instead");
  walk->add_option("--n-max", n_max, "Longest walk for --lil");
  walk->add_option("--scan-file", scan_file, "CSV from 'minf scan' to add the m_inf_ratio column");
  common(walk, true);

  // verify
  std::string suite = "all";
  std::size_t verify_limit = 10000;
  auto* verify = app.add_subcommand("verify", "Cross-module property suites; exit 1 on any failure");
  verify->add_option("--suite", suite, "convolution, bounds, sieve, all")
      ->check(CLI::IsMember({"convolution", "bounds", "sieve", "all"}));
  verify->add_option("--limit", verify_limit, "Table / scan size for the suites");
  verify->add_option("--seed", seed, "Sampling seed for the sieve suite");
  verify->add_option("--threads", threads, "Worker threads (0 = machine parallelism)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  inv.command = sub->get_name();
  inv.config = resolved_config(sub);

  try {
    validate_output_target(inv);

    if (sub == factor) {
      const auto f = factorize(parse_u64(n_text, "--n"));
      Table table{{"p", "exponent"}, {}};
      for (const auto& pp : f.factors) table.add({fmt(pp.prime), std::to_string(pp.exponent)});
      emit(inv, table, out);
      return kOk;
    }

    if (sub == mu) {
      const ArithKind kind = parse_arith_kind(kind_name);
      const std::uint64_t first = parse_u64(n_text, "--n");
      if (first == 0) throw UsageError("--n must be positive");
      const std::uint64_t last = to_text.empty() ? first : parse_u64(to_text, "--to");
      if (last < first) throw UsageError("--to must be >= --n");
      Table table{{"n", "value"}, {}};
      for (std::uint64_t n = first;; ++n) {
        table.add({fmt(n), fmt(pointwise(kind, n))});
        if (n == last) break;
      }
      if (to_text.empty() && inv.output.empty() && inv.fmt() == Format::Csv) {
        out << table.rows.front()[1] << '\n';
        return kOk;
      }
      emit(inv, table, out);
      return kOk;
    }

    if (sub == divs) {
      const std::uint64_t n = parse_u64(n_text, "--n");
      if (n == 0) throw UsageError("--n must be positive");
      const auto set = divisors_of(parse_divisor_system(system_name), n);
      Table table{{"d"}, {}};
      for (std::uint64_t d : set.divisors) table.add({fmt(d)});
      emit(inv, table, out);
      return kOk;
    }

    if (sub == conv) {
      const ConvKind kind = parse_conv_kind(conv_name);
      if (limit < 1) throw UsageError("--limit must be >= 1");
      if (want_witness) {
        std::vector<std::string> names;
        std::stringstream ss(pool_text);
        for (std::string item; std::getline(ss, item, ',');) names.push_back(item);
        std::vector<FnTable> pool;
        for (const auto& name : names) pool.push_back(named_table(name, limit));
        Table table{{"f", "g", "h", "n", "left", "right"}, {}};
        if (const auto w = find_nonassociative_witness(kind, limit, pool, threads))
          table.add({names[w->f], names[w->g], names[w->h], fmt(w->n), fmt(w->left), fmt(w->right)});
        else
          err << "no non-associative triple found for n <= " << limit << '\n';
        emit(inv, table, out);
        return kOk;
      }
      const FnTable f = named_table(f_name, limit);
      const FnTable result = want_inverse ? inverse(kind, f, limit)
                                          : convolve(kind, f, named_table(g_name, limit), limit, threads);
      Table table{{"n", "value"}, {}};
      for (std::size_t n = 1; n <= limit; ++n) table.add({fmt(static_cast<std::uint64_t>(n)), fmt(result(n))});
      emit(inv, table, out);
      return kOk;
    }

    if (sub == scan_cmd) {
      ScanOptions o;
      o.kind = parse_arith_kind(kind_name);
      o.x_max = parse_u64(x_max_text, "--x-max");
      o.segment_size = segment_size;
      o.checkpoint_every = checkpoint_every;
      o.threads = threads;
      std::optional<ScanState> resume;
      if (!resume_file.empty()) {
        require_readable(resume_file, "checkpoint");
        inv.add_input(resume_file);
        try {
          resume = load_checkpoint(resume_file);
        } catch (const std::runtime_error& e) {
          throw IoError(e.what());
        }
      }
      if (!checkpoint_file.empty()) {
        const fs::path parent = fs::path(checkpoint_file).parent_path();
        if (!parent.empty() && !fs::is_directory(parent))
          throw IoError("checkpoint directory does not exist: " + parent.string());
      }
      Table table{{"x", "msum", "ratio", "min_ratio", "max_ratio", "wm_over_logx"}, {}};
      auto sink = [&](const SummatoryRecord& r, const ScanState& st) {
        table.add({fmt(r.x), fmt(r.msum), fmt(r.ratio), fmt(r.min_ratio), fmt(r.max_ratio), fmt(r.wm_over_logx())});
        if (!checkpoint_file.empty()) save_checkpoint(checkpoint_file, st);
      };
      if (use_reference)
        reference::scan(o, sink, resume);
      else
        scan(o, sink, resume);
      emit(inv, table, out);
      return kOk;
    }

    if (sub == series) {
      Table table = series_table();
      const std::vector<double> sigmas = sigma_grid_text.empty() ? std::vector<double>{sigma}
                                                                 : parse_grid(sigma_grid_text, "--sigma-grid");
      const std::vector<double> ts = t_grid_text.empty() ? std::vector<double>{t} : parse_grid(t_grid_text, "--t-grid");
      if (mode == "bounds") {
        std::vector<int> depths;
        for (double d : parse_list(depths_text, "--depths")) depths.push_back(static_cast<int>(d));
        const auto report = bounds_check(sigmas, ts, depths, threads);
        for (const auto& r : report.rows)
          table.add({fmt(r.sigma), fmt(r.t), fmt(r.value.real()), fmt(r.value.imag()), fmt(r.tail_bound), r.check,
                     fmt(r.slack)});
        emit(inv, table, out);
        return report.violations == 0 ? kOk : kVerifyFailed;
      }
      for (double sg : sigmas) {
        for (double tt : ts) {
          const cplx s(sg, tt);
          SeriesEval ev;
          if (mode == "zeta") {
            ev.value = zeta(s);
          } else if (mode == "zeta_prime") {
            ev.value = zeta_prime(s);
          } else if (mode == "m_product") {
            ev = depth < 0 ? m_product(s) : m_product(s, depth);
          } else if (mode == "m_partial") {
            ev = m_partial_sum(s, terms);
          } else {
            ev.value = f_series(s);
          }
          table.add({fmt(sg), fmt(tt), fmt(ev.value.real()), fmt(ev.value.imag()), fmt(ev.tail_bound), mode, ""});
        }
      }
      emit(inv, table, out);
      return kOk;
    }

    if (sub == expl) {
      require_readable(zeros_file, "zeros file");
      inv.add_input(zeros_file);
      ZeroList zeros;
      try {
        zeros = load_zeros(zeros_file);
      } catch (const std::runtime_error& e) {
        throw IoError(std::string(zeros_file) + ": " + e.what());
      }
      if (!(x_from >= 2) || !(x_step > 0) || x_to < x_from) throw UsageError("need 2 <= x-from <= x-to and x-step > 0");
      const ExplicitKind kind = parse_explicit_kind(explicit_kind);
      const ExplicitFormula formula(kind, ExplicitConfig{layers, cutoff}, zeros);
      const auto top = static_cast<std::uint64_t>(x_to);
      const auto values = sieve_values(kind == ExplicitKind::Classical ? ArithKind::Mu : ArithKind::MuInf, 1, top);
      std::vector<std::int64_t> prefix(values.size() + 1, 0);
      for (std::size_t i = 0; i < values.size(); ++i) prefix[i + 1] = prefix[i] + values[i];
      Table table{{"x", "measured", "explicit_sum", "abs_err"}, {}};
      const auto count = static_cast<std::size_t>(std::floor((x_to - x_from) / x_step + 1e-9)) + 1;
      for (std::size_t i = 0; i < count; ++i) {
        const double x = x_from + x_step * static_cast<double>(i);
        const auto measured = prefix[static_cast<std::size_t>(std::floor(x))];
        const double value = formula.evaluate(x);
        table.add({fmt(x), fmt(measured), fmt(value), fmt(std::abs(value - static_cast<double>(measured)))});
      }
      emit(inv, table, out);
      return kOk;
    }

    if (sub == walk) {
      if (lil) {
        std::vector<std::pair<std::uint64_t, std::int64_t>> points;
        if (!scan_file.empty()) {
          require_readable(scan_file, "scan file");
          inv.add_input(scan_file);
          std::ifstream in(scan_file);
          std::string line;
          while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
            std::stringstream ss(line);
            std::string x, m;
            if (!std::getline(ss, x, ',') || !std::getline(ss, m, ',')) throw IoError("malformed scan line: " + line);
            try {
              points.emplace_back(std::stoull(x), std::stoll(m));
            } catch (const std::exception&) {
              throw IoError("malformed scan line: " + line);
            }
          }
        }
        const auto rows = lil_scan(n_max, trials, seed, points, threads);
        Table table{{"n", "quantile25", "median", "quantile75", "m_inf_ratio"}, {}};
        for (const auto& r : rows)
          table.add({fmt(r.n), fmt(r.quantile25), fmt(r.median), fmt(r.quantile75),
                     r.m_inf_ratio ? fmt(*r.m_inf_ratio) : ""});
        emit(inv, table, out);
        return kOk;
      }
      const auto cs = parse_list(c_text, "--c");
      const auto stats = simulate(steps, trials, seed, cs, threads);
      const auto rows = chebyshev_check(stats, cs);
      Table table{{"c", "empirical_prob", "gaussian_prob", "cheb_bound", "slack"}, {}};
      bool violated = false;
      for (const auto& r : rows) {
        table.add({fmt(r.c), fmt(r.empirical_prob), fmt(r.gaussian_prob), fmt(r.bound), fmt(r.slack)});
        violated = violated || r.violated;
      }
      emit(inv, table, out);
      return violated ? kVerifyFailed : kOk;
    }

    if (sub == verify) {
      std::vector<CheckResult> results;
      auto append = [&](std::vector<CheckResult> more) {
        for (auto& r : more) results.push_back(std::move(r));
      };
      if (suite == "convolution" || suite == "all") append(verify_convolution(verify_limit, threads));
      if (suite == "bounds" || suite == "all") append(verify_bounds(threads));
      if (suite == "sieve" || suite == "all") append(verify_sieve(std::max<std::size_t>(verify_limit, 2), seed, threads));
      bool ok = true;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        ok = ok && r.passed;
      }
      return ok ? kOk : kVerifyFailed;
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::range_error& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::logic_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace minf::cli
