#include "flagrank/report/report.hpp"

#include <chrono>
#include <sstream>

#include "flagrank/parabolic/parabolic.hpp"

namespace flagrank::report {

using json = nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownIdentifier:
    case ErrorKind::ArityError:
    case ErrorKind::TypeError:
    case ErrorKind::InconsistentChart:
      return kParse;
    case ErrorKind::UnknownModel:
      return kUnknownModel;
    case ErrorKind::InvalidArgument:
      return kUsage;
    case ErrorKind::Internal:
      return kInternal;
    default:
      return kPrecondition;
  }
}

namespace {

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kParse;
  return report::exit_code_for(e.kind());
}

json frame_json(const std::vector<VectorField>& frame) {
  json out = json::array();
  for (const auto& f : frame) out.push_back(f.to_string());
  return out;
}

json chart_json(const ChartPtr& c) {
  json vars = json::array();
  for (std::size_t i = 0; i < c->dimension(); ++i) vars.push_back(c->variable(i));
  return {{"name", c->name()}, {"variables", vars}};
}

std::string q(const mpq_class& v) { return v.get_str(); }

json point_json(const PointQ& p) { return p.to_string(); }

json adapted_json(const AdaptedFrame& fr) {
  return {{"X1", fr.x1.to_string()}, {"X2", fr.x2.to_string()}, {"Y", fr.y.to_string()},
          {"Y1", fr.y1.to_string()}, {"Y2", fr.y2.to_string()}, {"Z", fr.z.to_string()},
          {"notes", fr.notes}};
}

json growth_json(const GrowthVector& g) { return g.ranks; }

json relations_json(const std::vector<RelationCheck>& rel) {
  json out = json::array();
  for (const auto& r : rel) out.push_back({{"relation", r.relation}, {"holds", r.holds}});
  return out;
}

// Settings for one task after merging CLI options and source arguments.
struct TaskSettings {
  SampleSpec sample;
  std::optional<PointQ> point;
};

struct Context {
  const dsl::Model& model;
  const Options& options;
};

TaskSettings settings_for(const Context& ctx, const std::string& task, const ChartPtr& chart) {
  const dsl::TaskDecl* decl = nullptr;
  for (const auto& t : ctx.model.tasks) {
    if (t.name == task) {
      decl = &t;
      break;
    }
  }
  std::optional<std::size_t> samples = ctx.options.samples;
  std::optional<std::uint64_t> seed = ctx.options.seed;
  std::optional<PointQ> point;
  if (ctx.options.point) {
    // A command-line point is a usage problem, not a model source error.
    try {
      point = dsl::parse_point(chart, *ctx.options.point);
    } catch (const ParseError& e) {
      throw Error(ErrorKind::InvalidArgument, "bad --point '" + *ctx.options.point + "': " + e.detail());
    }
  }
  if (decl) {
    for (const auto& a : decl->args) {
      if (a.key == "samples") {
        if (!samples) samples = std::stoul(a.value);
      } else if (a.key == "seed") {
        if (!seed) seed = static_cast<std::uint64_t>(std::stoll(a.value));
      } else if (a.key == "point") {
        if (!point) {
          const PointQ* p = ctx.model.point(a.value);
          if (!p) throw Error(ErrorKind::UnknownIdentifier, "task " + task + ": unknown point '" + a.value + "'");
          point = *p;
        }
      } else if (a.key != "dist") {
        throw Error(ErrorKind::InvalidArgument,
                    "task " + task + ": unknown argument '" + (a.key.empty() ? a.value : a.key) + "'");
      }
    }
  }
  TaskSettings s;
  s.sample.samples = samples.value_or(20);
  s.sample.seed = seed.value_or(0);
  if (s.sample.samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  s.point = point;
  return s;
}

json run_growth(const Distribution& d, const TaskSettings& s) {
  DerivedFlag f = derived_flag(d);
  json steps = json::array();
  for (const auto& st : f.steps) steps.push_back(frame_json(st.frame()));
  json out = {{"growth", growth_json(f.growth)}, {"growth_string", f.growth.to_string()},
              {"steps", steps}};
  if (s.point) {
    GrowthVector at = f.growth_at(*s.point);
    out["at_point"] = {{"point", point_json(*s.point)},
                       {"growth", growth_json(at)},
                       {"singular", !(at == f.growth)}};
  }
  return out;
}

json run_classify(const Distribution& d, const TaskSettings& s) {
  DoubrovForm form = doubrov_form(d);
  json out = {{"point_class", to_string(classify_generic(form))},
              {"form",
               {{"a11", form.a11.to_string()},
                {"a12", form.a12.to_string()},
                {"a21", form.a21.to_string()},
                {"a22", form.a22.to_string()}}},
              {"frame", adapted_json(form.frame)}};
  if (s.point) {
    auto a = form.at(*s.point);
    out["at_point"] = {{"point", point_json(*s.point)},
                       {"form", {q(a[0]), q(a[1]), q(a[2])}},
                       {"point_class", to_string(classify_matrix(a[0], a[1], a[2]))}};
  }
  return out;
}

json run_scan(const Distribution& d, const TaskSettings& s) {
  RegularityReport r = regularity_scan(d, s.sample);
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"index", p.index},
                   {"point", point_json(p.point)},
                   {"form", {q(p.form[0]), q(p.form[1]), q(p.form[2])}},
                   {"point_class", to_string(p.cls)}});
  }
  return {{"samples", s.sample.samples}, {"seed", s.sample.seed},
          {"generic", to_string(r.generic)}, {"regular", r.regular},
          {"skipped", r.skipped}, {"points", pts}};
}

json flag_json(const ParabolicFlag& f) {
  json out = {{"branch", to_string(f.branch)}, {"point_class", to_string(f.point_class)}};
  for (int k = 1; k <= 5; ++k) out["D" + std::to_string(k)] = frame_json(f.at(k).frame());
  out["frame"] = adapted_json(f.frame);
  auto rel = verify_flag_relations(f);
  out["relations"] = relations_json(rel);
  out["relations_hold"] = all_hold(rel);
  return out;
}

json run_flag(const Distribution& d, const TaskSettings&) { return flag_json(parabolic_flag(d)); }

bool bad_point(const Error& e) {
  return e.kind() == ErrorKind::FrameDegenerateAtPoint || e.kind() == ErrorKind::PoleAtPoint;
}

json run_symbol(const Distribution& d, const TaskSettings& s) {
  ParabolicFlag f = parabolic_flag(d);
  std::optional<SymbolAlgebra> sym;
  std::string source;
  if (s.point) {
    sym = symbol_algebra_at(f, *s.point);
    source = "requested";
  } else {
    try {
      sym = symbol_algebra_at(f, PointQ::origin(d.chart()));
      source = "origin";
    } catch (const Error& e) {
      if (!bad_point(e)) throw;
      SampleSpec one = s.sample;
      one.samples = 1;
      auto outcome = sample_points(d.chart(), one, [&](const PointQ& p) {
        sym = symbol_algebra_at(f, p);
        return true;
      });
      source = "sample " + std::to_string(outcome.indices.front());
    }
  }
  json brackets = json::array();
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) {
      json value = json::object();
      for (std::size_t k = 0; k < 6; ++k) {
        if (sym->c[i][j][k] != 0) value[SymbolAlgebra::label(k)] = q(sym->c[i][j][k]);
      }
      if (!value.empty()) {
        brackets.push_back({{"left", SymbolAlgebra::label(i)},
                            {"right", SymbolAlgebra::label(j)},
                            {"value", value}});
      }
    }
  }
  return {{"point", point_json(sym->point)},
          {"point_source", source},
          {"raw_d", q(sym->raw_d)},
          {"d", q(sym->d)},
          {"symbol", to_string(sym->cls)},
          {"generic_d", symbol_d_generic(f).to_string()},
          {"generic_symbol", to_string(symbol_class_generic(f))},
          {"brackets", brackets},
          {"antisymmetric", sym->antisymmetric()},
          {"jacobi", sym->jacobi()},
          {"graded", sym->graded()},
          {"violations", sym->violations}};
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json run_branch(const Distribution& d, const TaskSettings& s) {
  BranchReport r = branch_classify(d, s.sample);
  json out = {{"verdict", to_string(r.verdict)},
              {"point_class", to_string(r.point_class)},
              {"flag_branch", to_string(r.flag.branch)},
              {"relations", relations_json(r.relations)},
              {"relations_hold", all_hold(r.relations)}};
  if (r.symbol) {
    out["symbol"] = to_string(*r.symbol);
    out["d_generic"] = r.d_generic->to_string();
    out["E"] = frame_json(r.e->frame());
    out["b2_integrable"] = *r.b2_integrable;
    out["E_growth"] = growth_json(r.e_growth->generic);
    out["E_growth_constant"] = r.e_growth->constant;
    out["completely_nondegenerate"] = *r.completely_nondegenerate;
    out["d4_bracket_in_d5"] = *r.d4_bracket_in_d5;
  }
  out["equation_type"] = optional_bool(r.equation_type);
  return out;
}

using Runner = json (*)(const Distribution&, const TaskSettings&);

Runner runner_for(const std::string& task) {
  if (task == "growth") return run_growth;
  if (task == "classify") return run_classify;
  if (task == "scan") return run_scan;
  if (task == "flag") return run_flag;
  if (task == "symbol") return run_symbol;
  if (task == "branch") return run_branch;
  return nullptr;
}

json run_lift(const Distribution& d, const TaskSettings& s, json& slot) {
  if (d.rank() != 3) {
    throw Error(ErrorKind::LiftPreconditionFailed,
                "lift needs a rank-3 distribution, got rank " + std::to_string(d.rank()));
  }
  const auto& f = d.frame();
  models::LiftCheck check = models::lift_preconditions(f[0], f[1], f[2]);
  slot = {{"preconditions",
           {{"independent", check.independent},
            {"rank_b1_b3", check.rank_b1_b3},
            {"rank_b1_b1_b3", check.rank_b1_b1_b3},
            {"ok", check.ok}}}};
  Distribution lifted = models::lift_distribution(d);
  slot["chart"] = chart_json(lifted.chart());
  slot["frame"] = frame_json(lifted.frame());
  json analysis = json::object();
  slot["analysis"] = analysis;
  TaskSettings inner;
  inner.sample = s.sample;
  std::vector<std::string> steps = {"growth", "classify", "scan"};
  for (const auto& t : steps) {
    slot["analysis"][t] = runner_for(t)(lifted, inner);
  }
  if (is_parabolic(classify_generic(lifted))) {
    slot["analysis"]["branch"] = run_branch(lifted, inner);
  }
  return slot;
}

const dsl::NamedDist& target_dist(const dsl::Model& m, const Options& o) {
  if (m.dists.empty()) throw Error(ErrorKind::InvalidArgument, "the model declares no distribution");
  std::optional<std::string> name = o.dist;
  if (!name) {
    for (const auto& t : m.tasks) {
      for (const auto& a : t.args) {
        if (a.key == "dist") name = a.value;
      }
    }
  }
  if (!name) return m.dists.back();
  const dsl::NamedDist* d = m.dist(*name);
  if (!d) throw Error(ErrorKind::UnknownIdentifier, "unknown distribution '" + *name + "'");
  return *d;
}

json header(const std::string& model_name) {
  return {{"schema", kSchema},
          {"tool", {{"name", "flagrank"}, {"version", kToolVersion}}},
          {"model", model_name}};
}

}  // namespace

json error_json(const Error& e) {
  json out = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    out["origin"] = pe->origin();
    out["line"] = pe->line();
    out["column"] = pe->column();
    out["message"] = pe->detail();
  }
  out["exit_code"] = exit_code_for(e);
  return out;
}

Outcome failure(const Error& e, const std::string& model_name) {
  Outcome o;
  o.json = header(model_name);
  o.json["error"] = error_json(e);
  o.exit_code = exit_code_for(e);
  return o;
}

Outcome analyze(const dsl::Model& model, std::vector<std::string> tasks, const Options& options,
                const std::string& model_name) {
  Outcome out;
  out.json = header(model_name);
  out.json["origin"] = model.origin;
  if (tasks.empty()) {
    for (const auto& t : model.tasks) tasks.push_back(t.name);
  }
  if (tasks.empty()) tasks = {"growth", "classify"};
  for (const auto& t : tasks) {
    bool known = false;
    for (const auto& n : dsl::task_names()) known = known || n == t;
    if (!known) return failure(Error(ErrorKind::InvalidArgument, "unknown task '" + t + "'"), model_name);
  }
  out.json["tasks"] = tasks;
  Context ctx{model, options};
  try {
    const dsl::NamedDist& nd = target_dist(model, options);
    out.json["chart"] = chart_json(model.chart);
    out.json["distribution"] = {{"name", nd.name},
                                {"kind", nd.kind == dsl::DistKind::Ann ? "ann" : "span"},
                                {"rank", nd.dist.rank()},
                                {"frame", frame_json(nd.dist.frame())}};
  } catch (const Error& e) {
    out.json["error"] = error_json(e);
    out.exit_code = exit_code_for(e);
    return out;
  }
  const Distribution& d = target_dist(model, options).dist;
  out.json["results"] = json::object();
  json timings = json::object();
  for (const auto& t : tasks) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      TaskSettings s = settings_for(ctx, t, d.chart());
      if (t == "lift") {
        json slot;
        try {
          run_lift(d, s, slot);
        } catch (...) {
          if (!slot.is_null()) out.json["results"]["lift"] = slot;
          throw;
        }
        out.json["results"]["lift"] = slot;
      } else {
        out.json["results"][t] = runner_for(t)(d, s);
      }
    } catch (const Error& e) {
      json err = error_json(e);
      err["task"] = t;
      out.json["error"] = err;
      out.exit_code = exit_code_for(e);
      break;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    timings[t] = secs;
  }
  if (options.timing) out.json["timing_seconds"] = timings;
  return out;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

void text_value(std::ostringstream& os, const json& v, int indent, const std::string& key);

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// One-line form; nested objects get braces.
std::string inline_text(const json& v, bool top = true) {
  if (!v.is_structured()) return scalar(v);
  std::string out;
  for (const auto& [k, e] : v.items()) {
    if (!out.empty()) out += ", ";
    out += v.is_object() ? k + ": " + inline_text(e, false) : inline_text(e, false);
  }
  if (v.is_array()) return "[" + out + "]";
  return top ? out : "{" + out + "}";
}

bool all_scalars(const json& v) {
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void text_value(std::ostringstream& os, const json& v, int indent, const std::string& key) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string label = key.empty() ? "-" : key + ":";
  if (v.is_object()) {
    os << pad << label << "\n";
    for (const auto& [k, e] : v.items()) text_value(os, e, indent + 1, k);
  } else if (v.is_array()) {
    if (v.empty()) {
      os << pad << label << " []\n";
    } else if (all_scalars(v) && v.size() <= 8 && v.dump().size() < 70) {
      std::string line;
      for (const auto& e : v) line += (line.empty() ? "" : ", ") + scalar(e);
      os << pad << label << " [" << line << "]\n";
    } else {
      os << pad << label << "\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          os << pad << "  - " << inline_text(e) << "\n";
        } else {
          text_value(os, e, indent + 1, "");
        }
      }
    }
  } else {
    os << pad << label << " " << scalar(v) << "\n";
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  for (const auto& [k, v] : report.items()) text_value(os, v, 0, k);
  return os.str();
}

std::vector<std::string> expectation_tasks(const models::ModelSpec& spec) {
  if (spec.lift) return {"lift"};
  std::vector<std::string> t = {"growth", "classify", "scan"};
  if (!spec.expected.error && is_parabolic(spec.expected.point_class)) t.push_back("branch");
  return t;
}

std::vector<std::string> compare_expected(const models::Expected& ex, const json& report) {
  std::vector<std::string> diffs;
  auto mismatch = [&](const std::string& what, const json& want, const json& got) {
    if (want != got) diffs.push_back(what + ": expected " + want.dump() + ", got " + got.dump());
  };
  if (ex.error) {
    json got = report.contains("error") ? report["error"]["kind"] : json(nullptr);
    mismatch("error", std::string(to_string(*ex.error)), got);
    return diffs;
  }
  if (report.contains("error")) {
    diffs.push_back("unexpected error: " + report["error"].dump());
    return diffs;
  }
  const json& results = report.at("results");
  const json& a = results.contains("lift") ? results["lift"]["analysis"] : results;
  auto field = [&](const char* task, const char* key) {
    return a.contains(task) && a[task].contains(key) ? a[task][key] : json(nullptr);
  };
  mismatch("growth", ex.growth, field("growth", "growth_string"));
  mismatch("point_class", std::string(to_string(ex.point_class)), field("classify", "point_class"));
  mismatch("regular", ex.regular, field("scan", "regular"));
  if (ex.verdict) mismatch("verdict", std::string(to_string(*ex.verdict)), field("branch", "verdict"));
  if (is_parabolic(ex.point_class)) mismatch("relations_hold", true, field("branch", "relations_hold"));
  if (ex.symbol) mismatch("symbol", std::string(to_string(*ex.symbol)), field("branch", "symbol"));
  if (ex.b2_integrable) mismatch("b2_integrable", *ex.b2_integrable, field("branch", "b2_integrable"));
  if (ex.verdict && ex.point_class == PointClass::ParabolicNonDeg) {
    mismatch("equation_type", optional_bool(ex.equation_type), field("branch", "equation_type"));
  }
  if (ex.completely_nondegenerate) {
    mismatch("completely_nondegenerate", *ex.completely_nondegenerate,
             field("branch", "completely_nondegenerate"));
  }
  return diffs;
}

}  // namespace flagrank::report
