// asymspec command-line front end. Talks to the library through the C API only.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymspec/asymspec.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericError = 3 };

// Thrown for anything the user can fix on the command line.
struct ConfigError {
  std::string field;
  std::string message;
  nlohmann::json detail = nlohmann::json::object();
};

struct NumericError {
  nlohmann::json detail;
};

bool is_config_status(asymspec_status st) {
  switch (st) {
    case ASYMSPEC_ERR_SCHEMA:
    case ASYMSPEC_ERR_IO:
    case ASYMSPEC_ERR_PARSE:
    case ASYMSPEC_ERR_BAD_PARAMETER:
    case ASYMSPEC_ERR_OUT_OF_RANGE:
    case ASYMSPEC_ERR_DIMENSION_MISMATCH:
    case ASYMSPEC_ERR_NULL_ARGUMENT:
      return true;
    default:
      return false;
  }
}

// field names the flag to blame when the failure is a configuration problem.
void check(asymspec_status st, const std::string& field) {
  if (st == ASYMSPEC_OK) return;
  nlohmann::json detail = nlohmann::json::parse(asymspec_last_error_json());
  if (is_config_status(st)) throw ConfigError{field, asymspec_last_error(), detail};
  throw NumericError{detail};
}

struct StringDeleter {
  void operator()(char* s) const { asymspec_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct FamilyDeleter {
  void operator()(asymspec_family* f) const { asymspec_family_free(f); }
};
struct GridDeleter {
  void operator()(asymspec_grid* g) const { asymspec_grid_free(g); }
};
struct ExprDeleter {
  void operator()(asymspec_expr* e) const { asymspec_expr_free(e); }
};
struct FieldDeleter {
  void operator()(asymspec_field* f) const { asymspec_field_free(f); }
};
using Family = std::unique_ptr<asymspec_family, FamilyDeleter>;
using Grid = std::unique_ptr<asymspec_grid, GridDeleter>;
using Expr = std::unique_ptr<asymspec_expr, ExprDeleter>;
using Field = std::unique_ptr<asymspec_field, FieldDeleter>;

struct Config {
  std::string family, family2;
  double grid_h0 = 1.0, grid_ratio = 0.5;
  std::size_t grid_count = 20, tail_window = 6;
  std::optional<std::string> region_center;
  std::optional<double> region_half_width;
  std::size_t resolution = 101;
  std::optional<std::string> source_center;
  std::optional<double> source_half_width;
  std::optional<double> epsilon;
  std::string expr;
  std::string contour_center = "0";
  std::optional<double> contour_radius;
  std::size_t nodes = 256;
  unsigned nmax = 24;
  double tol = 0.0;
  std::string lambda;
  std::string out;
  std::uint64_t seed = 42;
  std::string suite;
};

std::pair<double, double> complex_flag(const std::string& text, const std::string& field) {
  asymspec_expr* raw = nullptr;
  check(asymspec_expr_parse(text.c_str(), &raw, nullptr), field);
  Expr e(raw);
  double re = 0.0, im = 0.0;
  const asymspec_status st = asymspec_expr_eval(e.get(), 0.0, 0.0, &re, &im);
  if (st != ASYMSPEC_OK) throw ConfigError{field, "expected a complex constant such as 1.5-0.5i"};
  return {re, im};
}

Family load(const std::string& path, const char* field) {
  if (path.empty()) throw ConfigError{field, std::string(field) + " is required for this command"};
  asymspec_family* raw = nullptr;
  check(asymspec_family_load(path.c_str(), &raw), field);
  return Family(raw);
}

Grid make_grid(const Config& cfg) {
  asymspec_grid* raw = nullptr;
  check(asymspec_grid_geometric(cfg.grid_h0, cfg.grid_ratio, cfg.grid_count, cfg.tail_window, &raw),
        "--grid-h0/--grid-ratio/--grid-count/--tail-window");
  return Grid(raw);
}

Expr make_expr(const Config& cfg) {
  if (cfg.expr.empty()) throw ConfigError{"--expr", "--expr is required for this command"};
  asymspec_expr* raw = nullptr;
  check(asymspec_expr_parse(cfg.expr.c_str(), &raw, nullptr), "--expr");
  return Expr(raw);
}

struct Spectral {
  asymspec_region region;
  double epsilon;
};

Spectral spectral_setup(const asymspec_family* family, const asymspec_grid* grid, const Config& cfg,
                        const std::optional<std::string>& center, const std::optional<double>& half_width,
                        const char* center_field) {
  Spectral sp{};
  check(asymspec_spectrum_defaults(family, grid, &sp.region, &sp.epsilon), "--family");
  if (center) std::tie(sp.region.center_re, sp.region.center_im) = complex_flag(*center, center_field);
  if (half_width) sp.region.half_width = *half_width;
  sp.region.resolution = cfg.resolution;
  if (cfg.epsilon) sp.epsilon = *cfg.epsilon;
  return sp;
}

class Output {
public:
  explicit Output(const std::string& dir) : dir_(dir) {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
      throw ConfigError{"--out", "cannot create output directory '" + dir_ + "'"};
  }

  // Artifacts are written once, at the end of a command.
  void artifact(const std::string& name, const std::string& text) { files_.emplace_back(name, text); }

  void flush(const std::string& primary) {
    std::fwrite(primary.data(), 1, primary.size(), stdout);
    if (primary.empty() || primary.back() != '\n') std::fputc('\n', stdout);
    if (dir_.empty()) return;
    for (const auto& [name, text] : files_) {
      const auto path = std::filesystem::path(dir_) / name;
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      if (!(f << text) || !f.flush())
        throw ConfigError{"--out", "cannot write '" + path.string() + "'"};
    }
  }

private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

CString take(char* s) { return CString(s); }

int cmd_field(const Config& cfg, bool with_spectrum) {
  Output out(cfg.out);
  Family fam = load(cfg.family, "--family");
  Grid grid = make_grid(cfg);
  const Spectral sp = spectral_setup(fam.get(), grid.get(), cfg, cfg.region_center,
                                     cfg.region_half_width, "--region-center");
  asymspec_field* raw = nullptr;
  check(asymspec_field_compute(fam.get(), &sp.region, grid.get(), &raw), "--region-half-width/--resolution");
  Field field(raw);
  char* csv = nullptr;
  check(asymspec_field_csv(field.get(), &csv), "--family");
  CString csv_s = take(csv);
  out.artifact("field.csv", csv_s.get());
  if (!with_spectrum) {
    out.flush(csv_s.get());
    return kOk;
  }
  if (!(sp.epsilon > 0.0)) throw ConfigError{"--epsilon", "epsilon must be positive"};
  char* js = nullptr;
  check(asymspec_field_spectrum_json(field.get(), sp.epsilon, &js), "--epsilon");
  CString json_s = take(js);
  out.artifact("spectrum.json", json_s.get());
  out.flush(json_s.get());
  return kOk;
}

int cmd_verdict(const Config& cfg, const std::string& kind) {
  Output out(cfg.out);
  Family a = load(cfg.family, "--family");
  Family b;
  if (kind != "qnil") b = load(cfg.family2, "--family2");
  Grid grid = make_grid(cfg);
  asymspec_verdict verdict{};
  char* js = nullptr;
  if (kind == "equiv") {
    check(asymspec_equiv(a.get(), b.get(), grid.get(), cfg.tol, &verdict, &js), "--family2");
  } else if (kind == "qequiv") {
    check(asymspec_qequiv(a.get(), b.get(), grid.get(), cfg.nmax, cfg.tol, &verdict, &js), "--nmax");
  } else {
    check(asymspec_qnil(a.get(), grid.get(), cfg.nmax, cfg.tol, &verdict, &js), "--nmax");
  }
  CString json_s = take(js);
  out.artifact("verdict.json", json_s.get());
  if (kind != "equiv") {
    asymspec_family* zero_or_b = b ? b.get() : nullptr;
    Family zero;
    if (!zero_or_b) {
      const std::size_t n = asymspec_family_dim(a.get());
      nlohmann::json z = {{"dim", n},
                          {"node", {{"kind", "constant"},
                                    {"matrix", {{"dim", n},
                                                {"re", std::vector<double>(n * n, 0.0)},
                                                {"im", std::vector<double>(n * n, 0.0)}}}}}};
      asymspec_family* raw = nullptr;
      check(asymspec_family_from_json(z.dump().c_str(), &raw), "--family");
      zero.reset(raw);
      zero_or_b = zero.get();
    }
    char* csv = nullptr;
    check(asymspec_bracket_sequence_csv(a.get(), zero_or_b, grid.get(), cfg.nmax, &csv), "--nmax");
    out.artifact("brackets.csv", take(csv).get());
  }
  out.flush(json_s.get());
  return kOk;
}

int cmd_funcalc(const Config& cfg) {
  Output out(cfg.out);
  Family fam = load(cfg.family, "--family");
  Grid grid = make_grid(cfg);
  Expr f = make_expr(cfg);
  const Spectral src = spectral_setup(fam.get(), grid.get(), cfg, cfg.source_center,
                                      cfg.source_half_width, "--source-center");
  asymspec_contour contour{};
  std::tie(contour.center_re, contour.center_im) = complex_flag(cfg.contour_center, "--contour-center");
  if (cfg.contour_radius) {
    contour.radius = *cfg.contour_radius;
  } else {
    double lower = 0.0, upper = 0.0;
    check(asymspec_quotient_bounds(fam.get(), grid.get(), &lower, &upper), "--family");
    contour.radius = std::hypot(contour.center_re, contour.center_im) + 1.5 * upper + 0.5;
  }
  contour.nodes = cfg.nodes;

  // The mapped region takes --region-*; unset fields fall back to the
  // default region of the mapped family.
  std::optional<asymspec_region> mapped;
  if (cfg.region_center || cfg.region_half_width) {
    asymspec_family* raw = nullptr;
    check(asymspec_family_funcalc(fam.get(), f.get(), &contour, &raw), "--contour-radius");
    Family image(raw);
    mapped = spectral_setup(image.get(), grid.get(), cfg, cfg.region_center, cfg.region_half_width,
                            "--region-center")
                 .region;
  }
  int matched = 0;
  char* js = nullptr;
  check(asymspec_funcalc_report(fam.get(), f.get(), &contour, grid.get(), &src.region,
                                mapped ? &*mapped : nullptr, &matched, &js),
        "--contour-radius");
  CString json_s = take(js);
  out.artifact("funcalc.json", json_s.get());
  out.flush(json_s.get());
  return kOk;
}

int cmd_series(const Config& cfg) {
  Output out(cfg.out);
  Family s = load(cfg.family, "--family");
  Family t = load(cfg.family2, "--family2");
  Grid grid = make_grid(cfg);
  if (cfg.lambda.empty()) throw ConfigError{"--lambda", "--lambda is required for series"};
  const auto [re, im] = complex_flag(cfg.lambda, "--lambda");
  char* js = nullptr;
  check(asymspec_series(s.get(), t.get(), re, im, grid.get(), cfg.nmax, cfg.tol, &js), "--nmax");
  CString json_s = take(js);
  out.artifact("series.json", json_s.get());
  out.flush(json_s.get());
  return kOk;
}

int cmd_verify(const Config& cfg) {
  Output out(cfg.out);
  int passed = 0;
  char* js = nullptr;
  check(asymspec_verify(cfg.seed, cfg.suite.c_str(), &passed, &js), "--suite");
  CString json_s = take(js);
  out.artifact("verify.json", json_s.get());
  out.flush(json_s.get());
  return passed ? kOk : kVerifyFailed;
}

void print_error(const nlohmann::json& err) { std::cerr << nlohmann::json{{"error", err}}.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic spectra of operator families"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--family", cfg.family, "Family JSON file");
  app.add_option("--family2", cfg.family2, "Second family JSON file");
  app.add_option("--grid-h0", cfg.grid_h0, "Largest h sample")->capture_default_str();
  app.add_option("--grid-ratio", cfg.grid_ratio, "Geometric ratio of the h grid")->capture_default_str();
  app.add_option("--grid-count", cfg.grid_count, "Number of h samples")->capture_default_str();
  app.add_option("--tail-window", cfg.tail_window, "Samples standing in for h -> 0")->capture_default_str();
  app.add_option("--region-center", cfg.region_center, "Lambda grid center, e.g. 1.5 or 0.5+1i");
  app.add_option("--region-half-width", cfg.region_half_width, "Lambda grid half width");
  app.add_option("--resolution", cfg.resolution, "Lambda grid points per axis (odd, >= 21)")->capture_default_str();
  app.add_option("--source-center", cfg.source_center, "funcalc: region center for the input family");
  app.add_option("--source-half-width", cfg.source_half_width, "funcalc: region half width for the input family");
  app.add_option("--epsilon", cfg.epsilon, "Flag lambda where the resolvent norm is >= 1/epsilon");
  app.add_option("--expr", cfg.expr, "Function of z for funcalc");
  app.add_option("--contour-center", cfg.contour_center, "Contour center")->capture_default_str();
  app.add_option("--contour-radius", cfg.contour_radius, "Contour radius");
  app.add_option("--nodes", cfg.nodes, "Contour nodes (power of two >= 64)")->capture_default_str();
  app.add_option("--nmax", cfg.nmax, "Bracket orders for qequiv/qnil, series terms for series")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Verdict tolerance (0 = default)")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "series: spectral point");
  app.add_option("--out", cfg.out, "Directory for artifacts");
  app.add_option("--seed", cfg.seed, "Base seed for verify")->capture_default_str();
  app.add_option("--suite", cfg.suite, "verify: run only this suite");

  auto* spectrum = app.add_subcommand("spectrum", "Spectrum estimate (JSON) and resolvent field (CSV)");
  auto* field = app.add_subcommand("field", "Resolvent-norm field CSV");
  auto* equiv = app.add_subcommand("equiv", "Asymptotic equivalence verdict");
  auto* qequiv = app.add_subcommand("qequiv", "Quasinilpotent equivalence verdict");
  auto* qnil = app.add_subcommand("qnil", "Asymptotic quasinilpotence verdict");
  auto* funcalc = app.add_subcommand("funcalc", "Functional calculus and spectral mapping report");
  auto* series = app.add_subcommand("series", "Resolvent transported by the bracket series");
  auto* verify = app.add_subcommand("verify", "Run the verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error({{"code", "ConfigError"}, {"field", "command line"}, {"message", e.what()}});
    return kConfigError;
  }

  try {
    if (spectrum->parsed()) return cmd_field(cfg, true);
    if (field->parsed()) return cmd_field(cfg, false);
    if (equiv->parsed()) return cmd_verdict(cfg, "equiv");
    if (qequiv->parsed()) return cmd_verdict(cfg, "qequiv");
    if (qnil->parsed()) return cmd_verdict(cfg, "qnil");
    if (funcalc->parsed()) return cmd_funcalc(cfg);
    if (series->parsed()) return cmd_series(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const ConfigError& e) {
    nlohmann::json err = {{"code", "ConfigError"}, {"field", e.field}, {"message", e.message}};
    if (!e.detail.empty()) err["detail"] = e.detail;
    print_error(err);
    return kConfigError;
  } catch (const NumericError& e) {
    print_error({{"code", "NumericError"}, {"detail", e.detail}});
    return kNumericError;
  }
  return kConfigError;
}
