#include "blspec_cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "blspec/cylinders.hpp"
#include "blspec/report.hpp"
#include "blspec/spectrum.hpp"

namespace blspec::cli {
namespace {

struct Options {
  std::string system;
  std::size_t n_max = 1000;
  std::string rel_tol = "1e-4";
  unsigned threads = 0;
  std::string out = "-";
  std::string manifest;
  bool exact = false;
  std::uint64_t seed = 0;
  std::uint64_t min_symbols = 0;
  std::uint64_t max_symbols = 100'000'000;
  std::size_t max_period = 0;
  Quotient max_digit = 0;
  std::string family;
  std::string csv;
};

class UnsupportedExact : public Error {
 public:
  using Error::Error;
};

std::string joined(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ' ';
    s += args[i];
  }
  return s;
}

void emit(const std::string& data, const Options& o, RunManifest manifest, std::ostream& out) {
  manifest.version = version();
  manifest.output_digest = sha256_hex(data);
  std::string manifest_path = o.manifest;
  if (o.out == "-") {
    out << data;
    out.flush();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error("cannot open " + o.out + " for writing");
    f << data;
    if (!f) throw Error("write to " + o.out + " failed");
    if (manifest_path.empty()) manifest_path = o.out + ".manifest.json";
  }
  if (!manifest_path.empty()) {
    std::ofstream f(manifest_path, std::ios::binary);
    if (!f) throw Error("cannot open " + manifest_path + " for writing");
    f << manifest_to_json(manifest);
  }
}

BigRational rel_tol_of(const Options& o) {
  try {
    return parse_rational(o.rel_tol);
  } catch (const Error& e) {
    throw ParseError(std::string("--rel-tol: ") + e.what(), 0);
  }
}

EnSequence compute_en(const SystemSpec& system, const Options& o) {
  if (const auto* ar = std::get_if<ARParams>(&system)) {
    CountOptions co;
    co.min_symbols = o.min_symbols;
    co.max_symbols = o.max_symbols;
    co.threads = o.threads;
    return en_counted(*ar, o.n_max, rel_tol_of(o), co);
  }
  ExactOptions eo;
  eo.threads = o.threads;
  eo.max_n = std::max<std::size_t>(eo.max_n, o.n_max);
  return en_exact(system, o.n_max, eo);
}

RunManifest manifest_for(const std::vector<std::string>& args, const Options& o, const std::string& system) {
  RunManifest m;
  m.command_line = joined(args);
  m.system = system;
  m.n_max = o.n_max;
  m.level_cap = 0;
  m.rel_tol = o.rel_tol;
  return m;
}

int cmd_en(const std::vector<std::string>& args, const Options& o, std::ostream& out) {
  const SystemSpec system = parse_system_spec(o.system);
  const EnSequence seq = compute_en(system, o);
  RunManifest m = manifest_for(args, o, to_string(system));
  if (seq.levels) m.level_cap = seq.levels->second;
  emit(en_to_csv(seq, o.threads), o, m, out);
  return kOk;
}

int cmd_spectrum(const std::vector<std::string>& args, const Options& o, bool nmax_given, std::ostream& out) {
  const SystemSpec system = parse_system_spec(o.system);
  RunManifest m = manifest_for(args, o, to_string(system));
  SpectrumEstimate est;
  if (o.exact) {
    const auto* rot = std::get_if<RotationParams>(&system);
    if (!rot || !rot->cf().is_periodic()) {
      throw UnsupportedExact("--exact needs a rotation with an eventually periodic angle, got " +
                             family_name(system));
    }
  }
  if (o.exact && !nmax_given) {
    est.system = system;
    est.exact = bl_exact_rotation(std::get<RotationParams>(system).cf());
    m.n_max = 0;
  } else {
    const EnSequence seq = compute_en(system, o);
    if (seq.levels) m.level_cap = seq.levels->second;
    est = bl_estimate(seq);
    const std::size_t profile_n = std::min<std::size_t>(o.n_max, 32);
    if (profile_n >= 2) est.complexity_floor = complexity_lower_bounds(complexity_profile(system, profile_n)).second;
  }
  emit(spectrum_to_json(est), o, m, out);
  return kOk;
}

int cmd_scan(const std::vector<std::string>& args, const Options& o, std::ostream& out) {
  const bool upper = o.family == "rot-upper";
  const auto values = upper ? scan_rotation_upper(o.max_period, o.max_digit, o.threads)
                            : scan_rotation_lower(o.max_period, o.max_digit, o.threads);
  RunManifest m = manifest_for(args, o, o.family);
  m.n_max = 0;
  emit(scan_to_json(o.family, o.max_period, o.max_digit, values), o, m, out);
  return kOk;
}

int cmd_plotdata(const std::vector<std::string>& args, const Options& o, std::ostream& out) {
  std::ifstream f(o.csv, std::ios::binary);
  if (!f) throw ParseError("cannot read " + o.csv, 0);
  std::stringstream buf;
  buf << f.rdbuf();
  RunManifest m = manifest_for(args, o, "");
  m.n_max = 0;
  emit(plotdata_from_csv(buf.str()), o, m, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Smallest cylinder measures and the B, B' invariants of low-complexity systems", "blspec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
    sub->add_option("--out", o.out, "output file, '-' for stdout")->capture_default_str();
    sub->add_option("--manifest", o.manifest, "manifest path (default: <out>.manifest.json)");
    sub->add_option("--seed", o.seed, "seed for randomized harnesses");
  };
  auto add_system = [&](CLI::App* sub) {
    sub->add_option("--system", o.system, "system spec, e.g. rot:cf=[0;|1]")->required();
    sub->add_option("--nmax", o.n_max, "largest word length")->check(CLI::Range(std::size_t{1}, std::size_t{100'000'000}));
    sub->add_option("--rel-tol", o.rel_tol, "frequency stabilisation tolerance (Arnoux-Rauzy)")->capture_default_str();
    sub->add_option("--min-symbols", o.min_symbols, "smallest construction word to count in (0: 2000*nmax)");
    sub->add_option("--max-symbols", o.max_symbols, "largest construction word")->capture_default_str();
  };

  CLI::App* en = app.add_subcommand("en", "write e_n for n = 1..nmax as CSV");
  add_system(en);
  add_common(en);

  CLI::App* spectrum = app.add_subcommand("spectrum", "estimate B and B' as JSON");
  add_system(spectrum);
  add_common(spectrum);
  spectrum->add_flag("--exact", o.exact, "closed forms for periodic rotation angles");

  CLI::App* scan = app.add_subcommand("scan", "exact values over periodic rotation angles");
  scan->add_option("family", o.family, "rot-upper or rot-lower")
      ->required()
      ->check(CLI::IsMember({"rot-upper", "rot-lower"}));
  scan->add_option("--max-period", o.max_period, "longest period")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  scan->add_option("--max-digit", o.max_digit, "largest partial quotient")
      ->required()
      ->check(CLI::Range(Quotient{1}, Quotient{1000000}));
  add_common(scan);

  CLI::App* plot = app.add_subcommand("plotdata", "n and 1/(n e_n) midpoints from an e_n CSV");
  plot->add_option("csv", o.csv, "CSV written by 'en'")->required();
  add_common(plot);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (en->parsed()) return cmd_en(args, o, out);
    if (spectrum->parsed()) return cmd_spectrum(args, o, spectrum->count("--nmax") > 0, out);
    if (scan->parsed()) return cmd_scan(args, o, out);
    return cmd_plotdata(args, o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedExact& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const ComplexityMismatch& e) {
    err << "complexity mismatch: " << e.what() << "\n";
    return kDegenerate;
  } catch (const NoConvergence& e) {
    err << "no convergence: " << e.what() << "\n";
    return kDegenerate;
  } catch (const InsufficientQuotients& e) {
    err << "insufficient quotients: " << e.what() << "\n";
    return kDegenerate;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace blspec::cli
