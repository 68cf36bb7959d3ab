#include "asymspec/asymspec.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "asymspec/bracket.hpp"
#include "asymspec/equivalence.hpp"
#include "asymspec/error.hpp"
#include "asymspec/funcalc.hpp"
#include "asymspec/parallel.hpp"
#include "asymspec/serialize.hpp"
#include "asymspec/spectrum.hpp"
#include "asymspec/verify.hpp"
#include "json_util.hpp"

using namespace asymspec;

struct asymspec_family { FamilySpec spec; };
struct asymspec_grid { HGrid grid; };
struct asymspec_expr { FuncExpr f; };
struct asymspec_field { ResolventField field; };

namespace {

thread_local std::string t_error;
thread_local std::string t_error_json = "{}";

asymspec_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return ASYMSPEC_ERR_DIMENSION_MISMATCH;
    case ErrorCode::BadParameter: return ASYMSPEC_ERR_BAD_PARAMETER;
    case ErrorCode::OutOfRange: return ASYMSPEC_ERR_OUT_OF_RANGE;
    case ErrorCode::LengthMismatch: return ASYMSPEC_ERR_LENGTH_MISMATCH;
    case ErrorCode::ParseError: return ASYMSPEC_ERR_PARSE;
    case ErrorCode::ExprError: return ASYMSPEC_ERR_EXPR;
    case ErrorCode::DivisionNearZero: return ASYMSPEC_ERR_DIVISION_NEAR_ZERO;
    case ErrorCode::UnboundVariable: return ASYMSPEC_ERR_UNBOUND_VARIABLE;
    case ErrorCode::UnresolvedPoint: return ASYMSPEC_ERR_UNRESOLVED_POINT;
    case ErrorCode::SingularOnContour: return ASYMSPEC_ERR_SINGULAR_ON_CONTOUR;
    case ErrorCode::NonEnclosing: return ASYMSPEC_ERR_NON_ENCLOSING;
    case ErrorCode::SchemaError: return ASYMSPEC_ERR_SCHEMA;
    case ErrorCode::IoError: return ASYMSPEC_ERR_IO;
  }
  return ASYMSPEC_ERR_INTERNAL;
}

asymspec_status fail(asymspec_status st, const std::string& msg, nlohmann::json extra = {}) {
  t_error = msg;
  nlohmann::json j = {{"code", asymspec_status_name(st)}, {"message", msg}};
  if (extra.is_object()) j.update(extra);
  t_error_json = j.dump();
  return st;
}

template <class F>
asymspec_status guarded(F&& body) {
  t_error.clear();
  t_error_json = "{}";
  try {
    body();
    return ASYMSPEC_OK;
  } catch (const ParseError& e) {
    return fail(ASYMSPEC_ERR_PARSE, e.what(), {{"offset", e.offset()}, {"expected", e.expected()}});
  } catch (const SchemaError& e) {
    return fail(ASYMSPEC_ERR_SCHEMA, e.what(), {{"pointer", e.pointer()}});
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ASYMSPEC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ASYMSPEC_ERR_INTERNAL, e.what());
  }
}

template <class... P>
bool all_set(const P*... ptrs) {
  return ((ptrs != nullptr) && ...);
}

#define ASYMSPEC_REQUIRE(...)                                                             \
  do {                                                                                    \
    if (!all_set(__VA_ARGS__))                                                            \
      return fail(ASYMSPEC_ERR_NULL_ARGUMENT, std::string(__func__) + ": null argument"); \
  } while (0)

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ComplexRegion region_of(const asymspec_region& r) {
  return {Complex(r.center_re, r.center_im), r.half_width, r.resolution};
}

ContourSpec contour_of(const asymspec_contour& c) {
  return {Complex(c.center_re, c.center_im), c.radius, c.nodes};
}

asymspec_verdict verdict_of(VerdictResult r) {
  switch (r) {
    case VerdictResult::Holds: return ASYMSPEC_HOLDS;
    case VerdictResult::Fails: return ASYMSPEC_FAILS;
    case VerdictResult::Inconclusive: return ASYMSPEC_INCONCLUSIVE;
  }
  return ASYMSPEC_INCONCLUSIVE;
}

unsigned n_or_default(unsigned n) { return n == 0 ? kDefaultSequenceLength : n; }

nlohmann::json matrix_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (const Complex& z : m.entries()) {
    re.push_back(detail::number(z.real()));
    im.push_back(detail::number(z.imag()));
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

nlohmann::json points_json(const std::vector<Complex>& zs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Complex& z : zs) arr.push_back({detail::number(z.real()), detail::number(z.imag())});
  return arr;
}

nlohmann::json region_json(const ComplexRegion& r) {
  return {{"center", {r.center.real(), r.center.imag()}},
          {"half_width", r.half_width},
          {"resolution", r.resolution}};
}

}  // namespace

extern "C" {

const char* asymspec_version(void) { return "0.1.0"; }

const char* asymspec_status_name(asymspec_status status) {
  switch (status) {
    case ASYMSPEC_OK: return "Ok";
    case ASYMSPEC_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case ASYMSPEC_ERR_BAD_PARAMETER: return "BadParameter";
    case ASYMSPEC_ERR_OUT_OF_RANGE: return "OutOfRange";
    case ASYMSPEC_ERR_LENGTH_MISMATCH: return "LengthMismatch";
    case ASYMSPEC_ERR_PARSE: return "ParseError";
    case ASYMSPEC_ERR_EXPR: return "ExprError";
    case ASYMSPEC_ERR_DIVISION_NEAR_ZERO: return "DivisionNearZero";
    case ASYMSPEC_ERR_UNBOUND_VARIABLE: return "UnboundVariable";
    case ASYMSPEC_ERR_UNRESOLVED_POINT: return "UnresolvedPoint";
    case ASYMSPEC_ERR_SINGULAR_ON_CONTOUR: return "SingularOnContour";
    case ASYMSPEC_ERR_NON_ENCLOSING: return "NonEnclosing";
    case ASYMSPEC_ERR_SCHEMA: return "SchemaError";
    case ASYMSPEC_ERR_IO: return "IoError";
    case ASYMSPEC_ERR_NULL_ARGUMENT: return "NullArgument";
    case ASYMSPEC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* asymspec_last_error(void) { return t_error.c_str(); }
const char* asymspec_last_error_json(void) { return t_error_json.c_str(); }

void asymspec_string_free(char* s) { std::free(s); }

void asymspec_set_threads(size_t n) { set_worker_count(n); }

asymspec_status asymspec_grid_geometric(double h0, double ratio, size_t count, size_t tail_window,
                                        asymspec_grid** out) {
  ASYMSPEC_REQUIRE(out);
  return guarded([&] { *out = new asymspec_grid{hgrid_geometric(h0, ratio, count, tail_window)}; });
}

asymspec_status asymspec_grid_default(asymspec_grid** out) {
  ASYMSPEC_REQUIRE(out);
  return guarded([&] { *out = new asymspec_grid{default_grid()}; });
}

size_t asymspec_grid_size(const asymspec_grid* grid) { return grid ? grid->grid.size() : 0; }
void asymspec_grid_free(asymspec_grid* grid) { delete grid; }

asymspec_status asymspec_family_from_json(const char* json, asymspec_family** out) {
  ASYMSPEC_REQUIRE(json, out);
  return guarded([&] { *out = new asymspec_family{family_from_json(json)}; });
}

asymspec_status asymspec_family_load(const char* path, asymspec_family** out) {
  ASYMSPEC_REQUIRE(path, out);
  return guarded([&] { *out = new asymspec_family{load_family(path)}; });
}

asymspec_status asymspec_family_to_json(const asymspec_family* family, char** out) {
  ASYMSPEC_REQUIRE(family, out);
  return guarded([&] { *out = dup(family_to_json(family->spec)); });
}

size_t asymspec_family_dim(const asymspec_family* family) { return family ? family->spec.dim() : 0; }

asymspec_status asymspec_family_eval(const asymspec_family* family, double h, double* re, double* im) {
  ASYMSPEC_REQUIRE(family, re, im);
  return guarded([&] {
    const ComplexMatrix m = family_eval(family->spec, h);
    const auto e = m.entries();
    for (std::size_t k = 0; k < e.size(); ++k) {
      re[k] = e[k].real();
      im[k] = e[k].imag();
    }
  });
}

asymspec_status asymspec_family_funcalc(const asymspec_family* family, const asymspec_expr* f,
                                        const asymspec_contour* contour, asymspec_family** out) {
  ASYMSPEC_REQUIRE(family, f, contour, out);
  return guarded([&] {
    *out = new asymspec_family{family_funcalc(family->spec, f->f, contour_of(*contour))};
  });
}

void asymspec_family_free(asymspec_family* family) { delete family; }

asymspec_status asymspec_expr_parse(const char* src, asymspec_expr** out, size_t* error_offset) {
  ASYMSPEC_REQUIRE(src, out);
  const asymspec_status st = guarded([&] { *out = new asymspec_expr{parse_expr(src)}; });
  if (st == ASYMSPEC_ERR_PARSE && error_offset) {
    error_offset[0] = nlohmann::json::parse(t_error_json)["offset"].get<std::size_t>();
  }
  return st;
}

asymspec_status asymspec_expr_eval(const asymspec_expr* f, double lambda_re, double lambda_im,
                                   double* out_re, double* out_im) {
  ASYMSPEC_REQUIRE(f, out_re, out_im);
  return guarded([&] {
    const Complex v = eval_at(f->f, Complex(lambda_re, lambda_im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

void asymspec_expr_free(asymspec_expr* f) { delete f; }

asymspec_status asymspec_quotient_bounds(const asymspec_family* family, const asymspec_grid* grid,
                                         double* lower, double* upper) {
  ASYMSPEC_REQUIRE(family, grid, lower, upper);
  return guarded([&] {
    const NormBounds b = quotient_norm_bounds(family->spec, grid->grid);
    *lower = b.lower;
    *upper = b.upper;
  });
}

asymspec_status asymspec_spectrum_defaults(const asymspec_family* family, const asymspec_grid* grid,
                                           asymspec_region* region, double* epsilon) {
  ASYMSPEC_REQUIRE(family, grid, region, epsilon);
  return guarded([&] {
    const NormBounds b = quotient_norm_bounds(family->spec, grid->grid);
    const ComplexRegion r = default_region(b);
    *region = {r.center.real(), r.center.imag(), r.half_width, r.resolution};
    *epsilon = default_epsilon(b);
  });
}

asymspec_status asymspec_field_compute(const asymspec_family* family, const asymspec_region* region,
                                       const asymspec_grid* grid, asymspec_field** out) {
  ASYMSPEC_REQUIRE(family, region, grid, out);
  return guarded([&] {
    *out = new asymspec_field{resolvent_norm_field(family->spec, region_of(*region), grid->grid)};
  });
}

asymspec_status asymspec_field_values(const asymspec_field* field, const double** values,
                                      size_t* count) {
  ASYMSPEC_REQUIRE(field, values, count);
  *values = field->field.values.data();
  *count = field->field.values.size();
  return ASYMSPEC_OK;
}

asymspec_status asymspec_field_csv(const asymspec_field* field, char** out) {
  ASYMSPEC_REQUIRE(field, out);
  return guarded([&] { *out = dup(to_csv(field->field)); });
}

asymspec_status asymspec_field_spectrum_json(const asymspec_field* field, double epsilon, char** out) {
  ASYMSPEC_REQUIRE(field, out);
  return guarded([&] { *out = dup(to_json(spectrum_estimate(field->field, epsilon))); });
}

void asymspec_field_free(asymspec_field* field) { delete field; }

asymspec_status asymspec_equiv(const asymspec_family* s, const asymspec_family* t,
                               const asymspec_grid* grid, double tol, asymspec_verdict* verdict,
                               char** json) {
  ASYMSPEC_REQUIRE(s, t, grid, verdict, json);
  return guarded([&] {
    const EquivalenceVerdict v = asymptotic_equiv(s->spec, t->spec, grid->grid, tol);
    *json = dup(to_json(v));
    *verdict = verdict_of(v.result);
  });
}

asymspec_status asymspec_commuting(const asymspec_family* s, const asymspec_family* t,
                                   const asymspec_grid* grid, double tol, asymspec_verdict* verdict,
                                   char** json) {
  ASYMSPEC_REQUIRE(s, t, grid, verdict, json);
  return guarded([&] {
    const EquivalenceVerdict v = asymptotic_commuting(s->spec, t->spec, grid->grid, tol);
    *json = dup(to_json(v));
    *verdict = verdict_of(v.result);
  });
}

asymspec_status asymspec_qequiv(const asymspec_family* s, const asymspec_family* t,
                                const asymspec_grid* grid, unsigned n_max, double tol,
                                asymspec_verdict* verdict, char** json) {
  ASYMSPEC_REQUIRE(s, t, grid, verdict, json);
  return guarded([&] {
    const EquivalenceVerdict v =
        quasinilpotent_equiv(s->spec, t->spec, grid->grid, n_or_default(n_max), tol);
    *json = dup(to_json(v));
    *verdict = verdict_of(v.result);
  });
}

asymspec_status asymspec_qnil(const asymspec_family* u, const asymspec_grid* grid, unsigned n_max,
                              double tol, asymspec_verdict* verdict, char** json) {
  ASYMSPEC_REQUIRE(u, grid, verdict, json);
  return guarded([&] {
    const EquivalenceVerdict v =
        is_asymptotic_quasinilpotent(u->spec, grid->grid, n_or_default(n_max), tol);
    *json = dup(to_json(v));
    *verdict = verdict_of(v.result);
  });
}

asymspec_status asymspec_bracket_sequence_csv(const asymspec_family* s, const asymspec_family* t,
                                              const asymspec_grid* grid, unsigned n_max, char** out) {
  ASYMSPEC_REQUIRE(s, t, grid, out);
  return guarded([&] {
    *out = dup(to_csv(bracket_sequence(s->spec, t->spec, grid->grid, n_or_default(n_max))));
  });
}

asymspec_status asymspec_series(const asymspec_family* s, const asymspec_family* t, double lambda_re,
                                double lambda_im, const asymspec_grid* grid, unsigned n_terms,
                                double tol, char** json) {
  ASYMSPEC_REQUIRE(s, t, grid, json);
  return guarded([&] {
    const Complex lambda(lambda_re, lambda_im);
    const SeriesResolvent sr = series_resolvent(s->spec, t->spec, lambda, grid->grid, n_terms,
                                                tol > 0.0 ? tol : 1e-6);
    nlohmann::json out = {
        {"lambda", {lambda_re, lambda_im}},
        {"n_terms", n_terms},
        {"term_norms", detail::numbers(sr.term_norms)},
        {"term_envelope", detail::numbers(sr.term_envelope)},
        {"left_defect", detail::tail_json(sr.defects.left)},
        {"right_defect", detail::tail_json(sr.defects.right)},
        {"truncation_warning", sr.truncation_warning},
    };
    *json = dup(out.dump(2));
  });
}

asymspec_status asymspec_funcalc_report(const asymspec_family* t, const asymspec_expr* f,
                                        const asymspec_contour* contour, const asymspec_grid* grid,
                                        const asymspec_region* source_region,
                                        const asymspec_region* mapped_region, int* matched,
                                        char** json) {
  ASYMSPEC_REQUIRE(t, f, contour, grid, matched, json);
  return guarded([&] {
    const HGrid& g = grid->grid;
    const ContourSpec cs = contour_of(*contour);

    const NormBounds sb = quotient_norm_bounds(t->spec, g);
    const ComplexRegion sr = source_region ? region_of(*source_region) : default_region(sb);
    const ResolventField source_field = resolvent_norm_field(t->spec, sr, g);
    const SpectrumEstimate source = spectrum_estimate(source_field, default_epsilon(sb));
    const SpectrumEstimate hull = enclosure_estimate(source_field, default_epsilon(sb));
    if (hull.flagged.empty())
      throw Error(ErrorCode::NonEnclosing, "no spectrum flagged in the source region");
    if (!contour_encloses(hull, cs))
      throw Error(ErrorCode::NonEnclosing, "contour does not enclose the flagged spectrum");

    const FamilySpec mapped = family_funcalc(t->spec, f->f, cs);
    const NormBounds mb = quotient_norm_bounds(mapped, g);
    const ComplexRegion mr = mapped_region ? region_of(*mapped_region) : default_region(mb);
    const SpectrumEstimate image = spectrum_estimate(resolvent_norm_field(mapped, mr, g),
                                                     default_epsilon(mb));

    std::vector<Complex> centroids, targets, found;
    for (const auto& c : source.clusters) {
      centroids.push_back(c.centroid);
      targets.push_back(eval_at(f->f, c.centroid));
    }
    for (const auto& c : image.clusters) found.push_back(c.centroid);
    const bool ok = !targets.empty() && match_clusters(image.clusters, targets, mr.spacing());

    nlohmann::json tail = nlohmann::json::array();
    for (double h : g.tail()) tail.push_back({{"h", h}, {"matrix", matrix_json(family_eval(mapped, h))}});
    nlohmann::json out = {
        {"expr", f->f.source()},
        {"contour", {{"center", {cs.center.real(), cs.center.imag()}},
                     {"radius", cs.radius},
                     {"nodes", cs.nodes}}},
        {"tail", std::move(tail)},
        {"spectral_mapping",
         {{"source_region", region_json(sr)},
          {"mapped_region", region_json(mr)},
          {"source_centroids", points_json(centroids)},
          {"expected", points_json(targets)},
          {"mapped_centroids", points_json(found)},
          {"matched", ok}}},
    };
    *json = dup(out.dump(2));
    *matched = ok ? 1 : 0;
  });
}

asymspec_status asymspec_verify(uint64_t seed, const char* only, int* passed, char** json) {
  ASYMSPEC_REQUIRE(passed, json);
  return guarded([&] {
    const VerifyReport r = run_verify(seed, only ? std::string_view(only) : std::string_view{});
    *json = dup(to_json(r));
    *passed = r.passed() ? 1 : 0;
  });
}

}  // extern "C"
