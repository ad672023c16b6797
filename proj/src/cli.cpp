#include "tfs/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfs/cones.hpp"
#include "tfs/diagram.hpp"
#include "tfs/io.hpp"
#include "tfs/kernels.hpp"
#include "tfs/planar.hpp"
#include "tfs/scaling.hpp"
#include "tfs/version.hpp"

#ifdef TFS_HAVE_OPENMP
#include <omp.h>
#endif

namespace tfs {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kBorderline = 2;
constexpr int kUsage = 3;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::IterationLimit:
    case Errc::IterationCap:
    case Errc::NoConvergence:
    case Errc::NotPSD:
    case Errc::NotSymmetric:
    case Errc::AccumulationFailed:
      return kBorderline;
    case Errc::EmptyNullSpace:        // "the region is empty" answers the question
    case Errc::ConeCriterionViolated: // "no strict planar scaling" answers it too
      return kNegative;
    default:
      return kUsage;
  }
}

struct CliState {
  Config cfg;
  bool json = false;
  bool quiet = false;
  bool renormalize = false;
  std::string exec = "auto";
  int threads = 0;

  std::ostringstream human;  // buffered so errors never leave partial output

  void say(const std::string& line) { human << line << '\n'; }

  int emit(const Json& doc, int code) const {
    if (json)
      std::cout << doc.dump(2) << '\n';
    else if (!quiet)
      std::cout << human.str();
    return code;
  }
};

std::string slurp(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {  // read the frame from stdin, for pipelines
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open \"" + path + "\"");
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedFrame {
  Frame frame;
  std::string digest;
};

LoadedFrame load_frame(const std::string& path, const CliState& st) {
  const std::string text = slurp(path);
  return {parse_frame(text, st.renormalize, st.cfg), fnv1a_hex(text)};
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::UsageError, "bad number in list: \"" + item + "\"");
    }
  }
  if (out.empty()) throw Error(Errc::UsageError, "empty number list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double d : parse_double_list(text)) {
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
      throw Error(Errc::UsageError, "subset indices must be integers");
    out.push_back(i);
  }
  return out;
}

std::string vector_line(const Eigen::VectorXd& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v(i));
  }
  return s;
}

std::string cvector_line(const Eigen::VectorXcd& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += '(' + format_double(v(i).real()) + ',' + format_double(v(i).imag()) + ')';
  }
  return s;
}

Json certificate_json(const Certificate& c) {
  Json j;
  j["kind"] = certificate_kind_name(c.kind);
  switch (c.kind) {
    case Certificate::Kind::StrictWitness:
      j["witness"] = json_real_vector(c.witness);
      break;
    case Certificate::Kind::HullWeights:
      j["weights"] = json_real_vector(c.weights);
      break;
    case Certificate::Kind::InvertibleGramian:
      j["min_eigenvalue"] = c.min_eigenvalue;
      break;
    case Certificate::Kind::ConeViolation:
      j["violation"] = json_real_vector(c.violation);
      break;
    case Certificate::Kind::None:
      break;
  }
  return j;
}

Json scaling_json(const ScalingResult& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.has_coefficients) {
    j["coefficients"] = json_real_vector(r.coefficients);
    j["lambda"] = r.lambda;
  } else {
    j["coefficients"] = nullptr;
  }
  j["certificate"] = certificate_json(r.certificate);
  Json d;
  d["rank"] = r.diagnostics.rank;
  d["nullity"] = r.diagnostics.nullity;
  d["rank_gap"] = r.diagnostics.rank_gap;
  d["null_threshold"] = r.diagnostics.null_threshold;
  d["spectrum"] = json_real_vector(r.diagnostics.spectrum);
  d["null_basis"] = json_real_matrix(r.diagnostics.null_basis);
  d["hull_iterations"] = r.diagnostics.hull_iterations;
  d["perceptron_updates"] = r.diagnostics.perceptron_updates;
  d["borderline_rank"] = r.diagnostics.borderline_rank;
  d["borderline_hull"] = r.diagnostics.borderline_hull;
  if (!r.diagnostics.borderline_reason.empty())
    d["borderline_reason"] = r.diagnostics.borderline_reason;
  Json zs = Json::array();
  for (int i : r.diagnostics.zero_set) zs.push_back(i + 1);
  d["zero_set"] = std::move(zs);
  if (r.diagnostics.tight_residual >= 0.0)
    d["tight_residual"] = r.diagnostics.tight_residual;
  j["diagnostics"] = std::move(d);
  return j;
}

void describe_scaling(CliState& st, const ScalingResult& r) {
  st.say("verdict: " + std::string(verdict_name(r.verdict)));
  if (r.has_coefficients) {
    st.say("lambda: " + format_double(r.lambda));
    st.say("coefficients: " + vector_line(r.coefficients));
  }
  st.say("certificate: " + std::string(certificate_kind_name(r.certificate.kind)));
  const auto& d = r.diagnostics;
  st.say("rank: " + std::to_string(d.rank) + "  nullity: " + std::to_string(d.nullity) +
         "  rank_gap: " + format_double(d.rank_gap));
  if (!d.zero_set.empty()) {
    std::string zs = "zero coefficients at:";
    for (int i : d.zero_set) zs += ' ' + std::to_string(i + 1);
    st.say(zs);
  }
  if (!d.borderline_reason.empty()) st.say("borderline: " + d.borderline_reason);
}

int scaling_exit(Verdict v) {
  switch (v) {
    case Verdict::StrictlyScalable: return kOk;
    case Verdict::SubsetScalable:
    case Verdict::NotScalable: return kNegative;
    case Verdict::Borderline: return kBorderline;
  }
  return kUsage;
}

int run_diagram(CliState& st, const std::string& file, int index) {
  const LoadedFrame in = load_frame(file, st);
  Json doc = result_envelope("diagram", in.digest, st.cfg);
  Json arr = Json::array();
  const int lo = index > 0 ? index - 1 : 0;
  const int hi = index > 0 ? index : in.frame.k();
  if (index > in.frame.k() || index < 0)
    throw Error(Errc::OutOfRange, "index " + std::to_string(index) + " outside 1.." +
                                      std::to_string(in.frame.k()));
  for (int i = lo; i < hi; ++i) {
    const DiagramVector dv = diagram_vector(in.frame.vec(i), in.frame.field, st.cfg);
    if (in.frame.field == Field::Real) {
      arr.push_back(json_real_vector(dv.data.real()));
      st.say("vector " + std::to_string(i + 1) + ": " + vector_line(dv.data.real()));
    } else {
      arr.push_back(json_complex_vector(dv.data));
      st.say("vector " + std::to_string(i + 1) + ": " + cvector_line(dv.data));
    }
  }
  doc["result"]["diagram_vectors"] = std::move(arr);
  return st.emit(doc, kOk);
}

int run_gram(CliState& st, const std::string& file, bool diagram) {
  const LoadedFrame in = load_frame(file, st);
  Json doc = result_envelope("gram", in.digest, st.cfg);
  if (diagram) {
    const DiagramGramian Gt = diagram_gramian(in.frame, st.cfg);
    doc["result"]["diagram_gramian"] = json_real_matrix(Gt.matrix);
    for (int i = 0; i < Gt.matrix.rows(); ++i)
      st.say(vector_line(Gt.matrix.row(i).transpose()));
  } else {
    const Gramian G = gramian(in.frame, st.cfg);
    if (in.frame.field == Field::Real) {
      doc["result"]["gramian"] = json_real_matrix(G.matrix.real());
      for (int i = 0; i < G.matrix.rows(); ++i)
        st.say(vector_line(G.matrix.real().row(i).transpose()));
    } else {
      doc["result"]["gramian"] = json_complex_matrix(G.matrix);
      for (int i = 0; i < G.matrix.rows(); ++i)
        st.say(cvector_line(G.matrix.row(i).transpose()));
    }
  }
  return st.emit(doc, kOk);
}

int run_check_tight(CliState& st, const std::string& file) {
  const LoadedFrame in = load_frame(file, st);
  const TightnessReport rep = check_tight(in.frame, st.cfg);
  const DiagramVector ds = diagram_sum(in.frame, st.cfg);
  Json doc = result_envelope("check-tight", in.digest, st.cfg);
  Json& r = doc["result"];
  r["is_frame"] = rep.is_frame;
  r["is_tight"] = rep.is_tight;
  r["lambda"] = rep.lambda;
  r["residual"] = rep.residual;
  r["diagram_sum_norm"] = ds.data.norm();
  st.say(std::string("frame: ") + (rep.is_frame ? "yes" : "no"));
  st.say(std::string("tight: ") + (rep.is_tight ? "yes" : "no"));
  st.say("lambda: " + format_double(rep.lambda) + "  residual: " + format_double(rep.residual) +
         "  diagram sum: " + format_double(ds.data.norm()));
  return st.emit(doc, rep.is_tight ? kOk : kNegative);
}

int run_scale_one(CliState& st, const std::string& file) {
  const LoadedFrame in = load_frame(file, st);
  const ScalingResult r = decide_scaling(in.frame, st.cfg);
  Json doc = result_envelope("scale", in.digest, st.cfg);
  doc["result"] = scaling_json(r);
  describe_scaling(st, r);
  return st.emit(doc, scaling_exit(r.verdict));
}

int run_scale_batch(CliState& st, const std::string& dir) {
  std::vector<fs::path> files;
  {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw Error(Errc::ParseError, "cannot read directory \"" + dir + "\"");
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  struct Item {
    std::string name;
    std::string digest;
    int code = kUsage;
    std::string line;
    Json payload;
  };
  std::vector<Item> items(files.size());

  // Files are independent work items; the slot-indexed fill keeps the output
  // order (and bytes) identical no matter how many threads run.
  const bool par = kernels::run_parallel(st.cfg.exec, files.size() * 100000);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#else
  (void)par;
#endif
  for (std::size_t i = 0; i < files.size(); ++i) {
    Item& item = items[i];
    item.name = files[i].filename().string();
    try {
      const std::string text = slurp(files[i].string());
      item.digest = fnv1a_hex(text);
      const Frame F = parse_frame(text, st.renormalize, st.cfg);
      const ScalingResult r = decide_scaling(F, st.cfg);
      item.code = scaling_exit(r.verdict);
      item.line = item.name + ": " + verdict_name(r.verdict);
      item.payload = scaling_json(r);
      item.payload["file"] = item.name;
    } catch (const Error& e) {
      item.code = exit_code_for(e.code());
      item.line = item.name + ": error: " + e.what();
      item.payload = Json{{"file", item.name}, {"error", e.what()}};
    } catch (const std::exception& e) {
      item.code = kUsage;
      item.line = item.name + ": error: " + e.what();
      item.payload = Json{{"file", item.name}, {"error", e.what()}};
    }
  }

  std::string all_digests;
  int worst = kOk;
  int n_err = 0, n_borderline = 0, n_negative = 0;
  Json arr = Json::array();
  for (const auto& item : items) {
    st.say(item.line);
    arr.push_back(item.payload);
    all_digests += item.digest;
    if (item.code == kUsage) ++n_err;
    else if (item.code == kBorderline) ++n_borderline;
    else if (item.code == kNegative) ++n_negative;
  }
  if (n_err) worst = kUsage;
  else if (n_borderline) worst = kBorderline;
  else if (n_negative) worst = kNegative;
  st.say("processed " + std::to_string(items.size()) + " files: " +
         std::to_string(n_err) + " errors, " + std::to_string(n_borderline) +
         " borderline, " + std::to_string(n_negative) + " non-strict");

  Json doc = result_envelope("scale --batch", fnv1a_hex(all_digests), st.cfg);
  doc["result"]["files"] = std::move(arr);
  doc["result"]["summary"] = Json{{"count", items.size()},
                                  {"errors", n_err},
                                  {"borderline", n_borderline},
                                  {"non_strict", n_negative}};
  return st.emit(doc, worst);
}

int run_scale2d(CliState& st, const std::string& file) {
  const LoadedFrame in = load_frame(file, st);
  const PlanarDecomposition dec = planar_scaling(in.frame, true, st.cfg);
  Json doc = result_envelope("scale2d", in.digest, st.cfg);
  Json& r = doc["result"];
  r["coefficients"] = json_real_vector(dec.coefficients);
  r["lambda"] = dec.lambda;
  r["csquared_raw"] = json_real_vector(dec.csquared);
  r["residual"] = dec.residual;
  Json pairs = Json::array();
  for (auto [a, b] : dec.pairs) pairs.push_back(Json::array({a + 1, b + 1}));
  r["orthogonal_pairs"] = std::move(pairs);
  Json triples = Json::array();
  for (const auto& t : dec.triples)
    triples.push_back(Json{{"anchor", t.a + 1},
                           {"pair", Json::array({t.b + 1, t.c + 1})},
                           {"locals", Json::array({t.ca, t.cb, t.cc})}});
  r["triples"] = std::move(triples);
  st.say("coefficients: " + vector_line(dec.coefficients));
  st.say("lambda: " + format_double(dec.lambda));
  st.say("pairs: " + std::to_string(dec.pairs.size()) +
         "  triples: " + std::to_string(dec.triples.size()) +
         "  residual: " + format_double(dec.residual));
  return st.emit(doc, kOk);
}

int run_verify(CliState& st, const std::string& file, const std::string& coeffs,
               double lambda) {
  const LoadedFrame in = load_frame(file, st);
  const std::vector<double> cl = parse_double_list(coeffs);
  Eigen::VectorXd c(cl.size());
  for (std::size_t i = 0; i < cl.size(); ++i) c(static_cast<int>(i)) = cl[i];
  if (lambda <= 0.0) lambda = c.squaredNorm() / in.frame.n;
  const VerificationReport rep = verify_scaling(in.frame, c, lambda, st.cfg);
  Json doc = result_envelope("verify", in.digest, st.cfg);
  Json& r = doc["result"];
  r["pass"] = rep.pass;
  r["lambda"] = lambda;
  r["gram_residual"] = rep.gram_residual;
  r["gram_bound"] = rep.gram_bound;
  r["operator_residual"] = rep.operator_residual;
  r["operator_bound"] = rep.operator_bound;
  r["trace_residual"] = rep.trace_residual;
  r["trace_bound"] = rep.trace_bound;
  st.say(std::string("pass: ") + (rep.pass ? "yes" : "no"));
  st.say("gram residual: " + format_double(rep.gram_residual) + " (bound " +
         format_double(rep.gram_bound) + ")");
  st.say("operator residual: " + format_double(rep.operator_residual) + " (bound " +
         format_double(rep.operator_bound) + ")");
  st.say("trace residual: " + format_double(rep.trace_residual) + " (bound " +
         format_double(rep.trace_bound) + ")");
  return st.emit(doc, rep.pass ? kOk : kNegative);
}

int run_cones(CliState& st, const std::string& file, const std::string& subset,
              int grid, double slack, std::uint64_t seed, int budget,
              const std::string& out_path) {
  const LoadedFrame in = load_frame(file, st);
  const bool export_mode = !subset.empty() || grid > 0;
  Json doc = result_envelope("cones", in.digest, st.cfg);
  if (export_mode) {
    std::vector<int> idx;
    if (!subset.empty()) idx = parse_int_list(subset);
    if (grid <= 0) grid = 64;
    const ConeSampleSet samples = export_cone_samples(in.frame, idx, grid, slack, st.cfg);
    const std::string text = format_cone_samples(samples);
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw Error(Errc::UsageError, "cannot write \"" + out_path + "\"");
      out << text;
      st.say("wrote " + std::to_string(samples.points.size()) + " points to " + out_path);
    } else {
      st.human << text;
    }
    Json& r = doc["result"];
    r["mode"] = "export";
    r["grid"] = samples.grid;
    r["slack"] = samples.slack;
    r["count"] = samples.points.size();
    Json pts = Json::array();
    for (const auto& p : samples.points) pts.push_back(json_real_vector(p));
    r["points"] = std::move(pts);
    return st.emit(doc, kOk);
  }

  const ViolationReport rep = in.frame.n == 2
                                  ? cone_violation_r2(in.frame, st.cfg)
                                  : cone_violation_search(in.frame, seed, budget, st.cfg);
  Json& r = doc["result"];
  r["mode"] = in.frame.n == 2 ? "exact" : "search";
  r["found"] = rep.found;
  if (rep.found) {
    r["violation"] = json_real_vector(rep.violation);
    r["margins"] = json_real_vector(rep.margins);
    st.say("violation: " + vector_line(rep.violation));
    st.say("margins: " + vector_line(rep.margins));
    st.say("the frame is not strictly scalable");
  } else {
    r["best_min_margin"] = rep.best_min_margin;
    r["boundary_contact"] = rep.boundary_contact;
    if (rep.boundary_contact) {
      r["contact_point"] = json_real_vector(rep.contact_point);
      st.say("no violation; boundary contact at: " + vector_line(rep.contact_point));
    } else {
      st.say("no violation found (best min margin " +
             format_double(rep.best_min_margin) + ")");
    }
  }
  return st.emit(doc, rep.found ? kOk : kNegative);
}

int run_region(CliState& st, const std::string& file) {
  const LoadedFrame in = load_frame(file, st);
  const SolutionRegion region = solution_region(in.frame, st.cfg);
  Json doc = result_envelope("region", in.digest, st.cfg);
  Json& r = doc["result"];
  r["nullity"] = static_cast<int>(region.basis.cols());
  r["basis"] = json_real_matrix(region.basis);
  Json rows = Json::array();
  for (const auto& row : region.rows) rows.push_back(json_real_vector(row));
  r["rows"] = std::move(rows);
  r["has_interior_point"] = region.has_interior_point;
  st.say("nullity: " + std::to_string(region.basis.cols()));
  st.say("coefficients are c_i = sqrt(<y, r_i>) over y with every <y, r_i> > 0; rows r_i:");
  for (std::size_t i = 0; i < region.rows.size(); ++i)
    st.say("  r_" + std::to_string(i + 1) + ": " + vector_line(region.rows[i]));
  if (region.has_interior_point) {
    r["interior_point"] = json_real_vector(region.interior_point);
    Eigen::VectorXd c(region.rows.size());
    for (std::size_t i = 0; i < region.rows.size(); ++i)
      c(static_cast<int>(i)) = std::sqrt(std::max(0.0, region.interior_point.dot(region.rows[i])));
    r["sample_coefficients"] = json_real_vector(c);
    st.say("interior sample y: " + vector_line(region.interior_point));
    st.say("sample coefficients: " + vector_line(c));
  } else {
    st.say("no strictly interior sample (the region has empty interior)");
  }
  return st.emit(doc, region.has_interior_point ? kOk : kNegative);
}

int run_perturbed(CliState& st, double v, const std::string& out_path) {
  const Frame F = perturbed_frame(v);
  const std::string text = emit_frame(F);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(Errc::UsageError, "cannot write \"" + out_path + "\"");
    out << text;
    if (!st.quiet) std::cout << "wrote " << out_path << '\n';
  } else {
    std::cout << text;  // raw frame document, pipeable into the other commands
  }
  return kOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CliState st;

  CLI::App app{"tight frame scaling toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  app.add_flag("--json", st.json, "emit a JSON result document on stdout");
  app.add_flag("--quiet", st.quiet, "suppress human-readable output");
  app.add_flag("--renormalize", st.renormalize,
               "rescale vectors that miss the claimed unit norm");
  app.add_option("--config", config_path, "JSON file with tolerance overrides");
  app.add_option("--exec", st.exec, "kernel execution: auto|serial|parallel")
      ->check(CLI::IsMember({"auto", "serial", "parallel"}));
  app.add_option("--threads", st.threads, "OpenMP thread count (0 = runtime default)");
  app.add_option("--tol-unit", st.cfg.tol_unit, "unit-norm tolerance");
  app.add_option("--tol-tight", st.cfg.tol_tight, "tightness residual tolerance");
  app.add_option("--tol-null", st.cfg.tol_null, "null-space cutoff (relative)");
  app.add_option("--tol-hull", st.cfg.tol_hull, "hull membership trust region");
  app.add_option("--tol-psd", st.cfg.tol_psd, "PSD floor (relative)");
  app.add_option("--tol-eig", st.cfg.tol_eig, "eigen comparison tolerance");
  app.add_option("--tol-rank", st.cfg.tol_rank, "rank decision tolerance");
  app.add_option("--tol-sym", st.cfg.tol_sym, "symmetry tolerance");

  auto* c_diagram = app.add_subcommand("diagram", "print diagram vectors");
  std::string diagram_file;
  int diagram_index = 0;
  c_diagram->add_option("file", diagram_file, "frame file")->required();
  c_diagram->add_option("--index", diagram_index, "1-based vector index (default: all)");

  auto* c_gram = app.add_subcommand("gram", "print the Gramian");
  std::string gram_file;
  bool gram_diagram = false;
  c_gram->add_option("file", gram_file, "frame file")->required();
  c_gram->add_flag("--diagram", gram_diagram, "print the diagram Gramian instead");

  auto* c_check = app.add_subcommand("check-tight", "is the frame tight as given?");
  std::string check_file;
  c_check->add_option("file", check_file, "frame file")->required();

  auto* c_scale = app.add_subcommand("scale", "decide tight-frame scalability");
  std::string scale_file, scale_batch;
  c_scale->add_option("file", scale_file, "frame file");
  c_scale->add_option("--batch", scale_batch, "directory of frame files (*.json)");

  auto* c_scale2d = app.add_subcommand("scale2d", "constructive planar scaling");
  std::string scale2d_file;
  c_scale2d->add_option("file", scale2d_file, "frame file")->required();

  auto* c_verify = app.add_subcommand("verify", "check a claimed scaling");
  std::string verify_file, verify_coeffs;
  double verify_lambda = 0.0;
  c_verify->add_option("file", verify_file, "frame file")->required();
  c_verify->add_option("--coeffs", verify_coeffs, "comma-separated coefficients")->required();
  c_verify->add_option("--lambda", verify_lambda,
                       "tight constant (default: sum c^2 / n)");

  auto* c_cones = app.add_subcommand("cones",
                                     "violation search, or cone sample export "
                                     "with --subset/--grid");
  std::string cones_file, cones_subset, cones_out;
  int cones_grid = 0, cones_budget = 64;
  double cones_slack = -1.0;
  std::uint64_t cones_seed = 12345;
  c_cones->add_option("file", cones_file, "frame file")->required();
  c_cones->add_option("--subset", cones_subset, "1-based indices, e.g. 1,2,3");
  c_cones->add_option("--grid", cones_grid, "grid resolution (export mode)");
  c_cones->add_option("--slack", cones_slack, "export margin slack (default: one grid step)");
  c_cones->add_option("--seed", cones_seed, "search seed");
  c_cones->add_option("--budget", cones_budget, "search restarts");
  c_cones->add_option("--out", cones_out, "write exported samples to a file");

  auto* c_region = app.add_subcommand("region", "polyhedral description of all scalings");
  std::string region_file;
  c_region->add_option("file", region_file, "frame file")->required();

  auto* c_perturbed = app.add_subcommand("perturbed", "emit the perturbed five-vector family");
  double perturbed_v = 0.0;
  std::string perturbed_out;
  c_perturbed->add_option("--v", perturbed_v, "perturbation in (0, 1/sqrt(2))")->required();
  c_perturbed->add_option("--out", perturbed_out, "write the frame file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (!config_path.empty()) load_config_overlay(slurp(config_path), st.cfg);
    if (st.exec == "serial") st.cfg.exec = Exec::Serial;
    else if (st.exec == "parallel") st.cfg.exec = Exec::Parallel;
#ifdef TFS_HAVE_OPENMP
    if (st.threads > 0) omp_set_num_threads(st.threads);
#endif

    if (app.got_subcommand(c_diagram)) return run_diagram(st, diagram_file, diagram_index);
    if (app.got_subcommand(c_gram)) return run_gram(st, gram_file, gram_diagram);
    if (app.got_subcommand(c_check)) return run_check_tight(st, check_file);
    if (app.got_subcommand(c_scale)) {
      if (scale_batch.empty() == scale_file.empty())
        throw Error(Errc::UsageError, "scale needs exactly one of <file> or --batch <dir>");
      return scale_batch.empty() ? run_scale_one(st, scale_file)
                                 : run_scale_batch(st, scale_batch);
    }
    if (app.got_subcommand(c_scale2d)) return run_scale2d(st, scale2d_file);
    if (app.got_subcommand(c_verify))
      return run_verify(st, verify_file, verify_coeffs, verify_lambda);
    if (app.got_subcommand(c_cones))
      return run_cones(st, cones_file, cones_subset, cones_grid, cones_slack, cones_seed,
                       cones_budget, cones_out);
    if (app.got_subcommand(c_region)) return run_region(st, region_file);
    if (app.got_subcommand(c_perturbed)) return run_perturbed(st, perturbed_v, perturbed_out);
    throw Error(Errc::UsageError, "no subcommand");
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    if (st.json) {
      Json doc = result_envelope("error", "", st.cfg);
      doc["error"] = Json{{"code", errc_name(e.code())}, {"message", e.what()}};
      std::cout << doc.dump(2) << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace tfs
