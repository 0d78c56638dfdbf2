#include "fwred/cli.hpp"

#include "fwred/engine.hpp"
#include "fwred/error.hpp"
#include "fwred/numoracle.hpp"
#include "fwred/problem.hpp"
#include "fwred/references.hpp"
#include "fwred/render.hpp"
#include "fwred/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fwred {

namespace {

struct PipelineOptions {
  std::string file;
  std::string sequence;
  std::optional<int> trunc;
  bool cleanup = false;
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("file", o.file, "Problem file")->required();
  cmd->add_option("--sequence", o.sequence, "Generator order per round, e.g. oe,eo,oo");
  cmd->add_option("--trunc", o.trunc, "Lowest effective order kept");
  cmd->add_flag("--cleanup", o.cleanup, "Apply the even-even cleanup generator");
}

ProblemFile load(const PipelineOptions& o) {
  std::ifstream in(o.file);
  if (!in) throw UsageError("cannot read problem file '" + o.file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ProblemFile p = parse_problem(buf.str());
  if (!o.sequence.empty()) {
    p.config.sequence.clear();
    std::stringstream ss(o.sequence);
    std::string item;
    while (std::getline(ss, item, ',')) p.config.sequence.push_back(component_from_string(item));
  }
  if (o.trunc) p.config.trunc_order = *o.trunc;
  if (o.cleanup) p.config.cleanup = true;
  p.config.validate();
  return p;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text << "\n";
}

void print_section(std::ostream& out, const char* title, const Expression& e) {
  if (e.is_zero()) return;
  out << title << " (" << e.size() << " monomials):\n  " << render(e, Format::text) << "\n";
}

void print_report(std::ostream& out, const DiffReport& r) {
  print_section(out, "missing", r.missing);
  print_section(out, "extra", r.extra);
  if (!r.mismatches.empty()) {
    out << "mismatched coefficients (" << r.mismatches.size() << " monomials):\n";
    for (const auto& m : r.mismatches) {
      const TablePtr& t = r.missing.table_ptr();
      out << "  candidate " << render(Expression::monomial(t, m.key, m.candidate), Format::text) << "\n"
          << "  reference " << render(Expression::monomial(t, m.key, m.reference), Format::text) << "\n";
    }
  }
}

Json sequence_json(const ReductionConfig& c) {
  Json s = Json::array();
  for (Component k : c.sequence) s.push_back(to_string(k));
  return s;
}

int cmd_reduce(const PipelineOptions& o, const std::string& emit, const std::string& out_path,
               const std::string& trace_path, std::ostream& out) {
  const ProblemFile p = load(o);
  const ReductionTrace trace = reduce(p.hamiltonian, p.config);
  write_text(out_path, render(trace.hamiltonian, format_from_string(emit)), out);
  if (!trace_path.empty()) write_text(trace_path, to_json(trace).dump(2), out);
  return kExitOk;
}

int cmd_verify(const PipelineOptions& o, const std::string& against, std::ostream& out) {
  const auto id = reference_from_string(against);
  if (!id || (*id != ReferenceId::eq4 && *id != ReferenceId::eq6 && *id != ReferenceId::eq7 &&
              *id != ReferenceId::eq8 && *id != ReferenceId::eq9)) {
    throw UsageError("--against must be one of eq4, eq6, eq7, eq8, eq9");
  }
  const ProblemFile p = load(o);
  const ReductionTrace trace = reduce(p.hamiltonian, p.config);
  Expression candidate = trace.hamiltonian;
  switch (*id) {
    case ReferenceId::eq4:
      // The reference is complete to order -2 only.
      candidate = truncate(candidate, -2);
      break;
    case ReferenceId::eq8:
      candidate = candidate - reference_expression(ReferenceId::eq6, p.table);
      break;
    case ReferenceId::eq9:
      candidate = cleanup_generator(trace);
      break;
    default:
      break;
  }
  const DiffReport r = diff_report(candidate, reference_expression(*id, p.table));
  if (r.empty()) {
    out << "verify " << against << ": OK (" << candidate.size() << " monomials)\n";
    return kExitOk;
  }
  out << "verify " << against << ": MISMATCH\n";
  print_report(out, r);
  return kExitVerifyFailed;
}

struct NumcheckOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> aux_dim;
  std::vector<double> c_values;
  std::string report_path;
  bool json = false;
};

int cmd_numcheck(const PipelineOptions& o, const NumcheckOptions& n, std::ostream& out) {
  const ProblemFile p = load(o);
  NumericSettings s = p.numeric.value_or(NumericSettings{});
  if (n.seed) s.seed = *n.seed;
  if (n.aux_dim) s.aux_dim = *n.aux_dim;
  if (!n.c_values.empty()) s.c_values.assign(n.c_values.begin(), n.c_values.end());

  const ReductionTrace trace = reduce(p.hamiltonian, p.config);
  const auto asg = num::MatrixAssignment::random(p.table, {s.m1, s.m2, s.aux_dim, s.seed});
  const num::ScalingReport rep = num::order_scaling_slope(p.hamiltonian, trace, asg, s.c_values);
  const double threshold = p.config.trunc_order - 0.5;
  const bool pass = rep.slope <= threshold;

  auto as_doubles = [](const std::vector<num::Real>& v) {
    Json a = Json::array();
    for (num::Real x : v) a.push_back(static_cast<double>(x));
    return a;
  };
  const Json report{{"config",
                     {{"file", o.file},
                      {"sequence", sequence_json(p.config)},
                      {"trunc_order", p.config.trunc_order},
                      {"cleanup", p.config.cleanup},
                      {"m1", static_cast<double>(s.m1)},
                      {"m2", static_cast<double>(s.m2)},
                      {"aux_dim", s.aux_dim},
                      {"matrix_dim", asg.dim()}}},
                    {"seed", s.seed},
                    {"c_values", as_doubles(rep.c_values)},
                    {"residuals", as_doubles(rep.residuals)},
                    {"absolute_residuals", as_doubles(rep.absolute)},
                    {"fitted_points", rep.fitted},
                    {"saturated", rep.saturated},
                    {"slope", static_cast<double>(rep.slope)},
                    {"threshold", threshold},
                    {"pass", pass}};
  if (!n.report_path.empty()) write_text(n.report_path, report.dump(2), out);
  if (n.json) {
    out << report.dump(2) << "\n";
  } else {
    out << "numcheck " << o.file << " (seed " << s.seed << ", " << asg.dim() << "x" << asg.dim() << " matrices)\n";
    for (std::size_t k = 0; k < rep.c_values.size(); ++k) {
      out << "  c = " << static_cast<double>(rep.c_values[k]) << "  relative residual "
          << static_cast<double>(rep.residuals[k]) << (k < rep.fitted ? "" : "  (saturated)") << "\n";
    }
    out << "  slope " << static_cast<double>(rep.slope) << " (threshold " << threshold << "): "
        << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitOk : kExitVerifyFailed;
}

Json reference_json(ReferenceId id) {
  const TablePtr t = reference_table(id);
  return Json{{"table", to_json(*t)}, {"expression", to_json(reference_expression(id, t))}};
}

int cmd_references(const std::string& emit, const std::string& out_path, const std::string& golden_dir,
                   std::ostream& out) {
  if (emit != "json") throw UsageError("references supports --emit json only");
  if (!golden_dir.empty()) {
    std::filesystem::create_directories(golden_dir);
    for (ReferenceId id : all_references()) {
      write_text((std::filesystem::path(golden_dir) / (to_string(id) + ".json")).string(),
                 reference_json(id).dump(2), out);
    }
    out << "wrote " << all_references().size() << " golden files to " << golden_dir << "\n";
    return kExitOk;
  }
  Json all = Json::object();
  for (ReferenceId id : all_references()) all[to_string(id)] = reference_json(id);
  write_text(out_path, all.dump(2), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic two-body Foldy-Wouthuysen reduction", "fwred"};
  app.require_subcommand(1);

  PipelineOptions po;
  std::string emit = "text", out_path, trace_path, against, golden_dir;
  NumcheckOptions no;

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a problem file to even-even form");
  add_pipeline_options(reduce_cmd, po);
  reduce_cmd->add_option("--emit", emit, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
  reduce_cmd->add_option("--out", out_path, "Write the result here instead of stdout");
  reduce_cmd->add_option("--trace", trace_path, "Write the reduction trace as JSON");

  auto* verify_cmd = app.add_subcommand("verify", "Compare a reduction with a built-in reference");
  add_pipeline_options(verify_cmd, po);
  verify_cmd->add_option("--against", against, "eq4, eq6, eq7, eq8 or eq9")->required();

  auto* numcheck_cmd = app.add_subcommand("numcheck", "Certify a reduction by matrix conjugation");
  add_pipeline_options(numcheck_cmd, po);
  numcheck_cmd->add_option("--seed", no.seed, "Random seed (default 0)");
  numcheck_cmd->add_option("--aux-dim", no.aux_dim, "Auxiliary factor dimension (default 2)");
  numcheck_cmd->add_option("--c", no.c_values, "Comma-separated sweep of c")->delimiter(',');
  numcheck_cmd->add_option("--report", no.report_path, "Write the JSON report here");
  numcheck_cmd->add_flag("--json", no.json, "Print the JSON report instead of the summary");

  auto* refs_cmd = app.add_subcommand("references", "Dump the built-in reference expressions");
  refs_cmd->add_option("--emit", emit, "json")->required();
  refs_cmd->add_option("--out", out_path, "Write here instead of stdout");
  refs_cmd->add_option("--golden-dir", golden_dir, "Regenerate one golden file per reference in this directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*reduce_cmd) return cmd_reduce(po, emit, out_path, trace_path, out);
    if (*verify_cmd) return cmd_verify(po, against, out);
    if (*numcheck_cmd) return cmd_numcheck(po, no, out);
    return cmd_references(emit, out_path, golden_dir, out);
  } catch (const ParseError& e) {
    err << po.file << ":" << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DeclarationError& e) {
    err << "declaration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ReferenceError& e) {
    err << "reference error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EqualMassError& e) {
    err << "equal-mass error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace fwred
