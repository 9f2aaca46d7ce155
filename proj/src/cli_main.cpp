// SPDX-License-Identifier: MIT
//
// tenx: command-line front end for the extremal-tensor library.
//
// Subcommands: bounds, construct, norms, search, verify-tables,
// check-conjecture2, order-gap.  Exit codes: 0 success, 1 validation or
// usage error, 2 verification mismatch (a table row or conjecture check
// failed).  With --json, output is a single JSON object whose content is
// byte-identical across runs for an identical command line and seed;
// wall-clock measurements are confined to the trailing "timing" field.
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tenx/bounds.hpp"
#include "tenx/constructions.hpp"
#include "tenx/search.hpp"
#include "tenx/spectral.hpp"
#include "tenx/tensor.hpp"
#include "tenx/tensor_io.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

/// Flags shared by every estimator-backed subcommand.
struct EstimatorOpts {
  std::size_t starts = 64;
  std::size_t iters = 500;
  double tol = 1e-12;
  std::uint64_t seed = 12345;
  std::size_t jobs = 1;
};

void attach_estimator_flags(CLI::App* sub, EstimatorOpts* opts, bool with_jobs = true) {
  sub->add_option("--starts", opts->starts, "Random starts per spectral estimate")
      ->capture_default_str();
  sub->add_option("--iters", opts->iters, "Maximum alternating sweeps per start")
      ->capture_default_str();
  sub->add_option("--tol", opts->tol, "Relative convergence threshold")
      ->capture_default_str();
  sub->add_option("--seed", opts->seed, "Root RNG seed (echoed with the results)")
      ->capture_default_str();
  if (with_jobs) {
    sub->add_option("--jobs", opts->jobs, "Worker threads (env: TENX_JOBS)")
        ->envname("TENX_JOBS")
        ->capture_default_str();
  }
}

tenx::EstimatorConfig to_estimator(const EstimatorOpts& opts, bool nonnegative) {
  tenx::EstimatorConfig cfg;
  cfg.starts = opts.starts;
  cfg.max_iters = opts.iters;
  cfg.tol = opts.tol;
  cfg.seed = opts.seed;
  cfg.jobs = opts.jobs;
  cfg.nonnegative_mode = nonnegative;
  return cfg;
}

/// Output settings shared by every subcommand.
struct OutputOpts {
  bool json = false;
  int digits = 6;
};

void attach_output_flags(CLI::App* sub, OutputOpts* opts) {
  sub->add_flag("--json", opts->json, "Emit one JSON object instead of text");
  sub->add_option("--digits", opts->digits, "Significant digits in text output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

std::string fmt(double value, const OutputOpts& out) {
  return tenx::format_real(value, out.digits);
}

void emit_json(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

/// Parses a comma-separated 1-based permutation image list ("2,1,4,3").
tenx::Permutation parse_permutation(const std::string& text) {
  tenx::Permutation perm;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed permutation entry '" + item + "'");
    }
    if (used != item.size() || value == 0) {
      throw std::invalid_argument("malformed permutation entry '" + item + "'");
    }
    perm.map.push_back(static_cast<std::size_t>(value - 1));
  }
  if (!perm.is_valid()) {
    throw std::invalid_argument("'" + text + "' is not a permutation of 1..n");
  }
  return perm;
}

std::vector<std::size_t> shape_json(const tenx::Shape& shape) {
  return std::vector<std::size_t>(shape.begin(), shape.end());
}

std::size_t count_ones(const tenx::DenseTensor& t) {
  std::size_t ones = 0;
  for (double v : t.data()) ones += (v == 1.0) ? 1 : 0;
  return ones;
}

/// 1-based multi-indices of the unit entries of a zero-one tensor.
std::vector<std::vector<std::size_t>> ones_list(const tenx::DenseTensor& t) {
  std::vector<std::vector<std::size_t>> list;
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    if (t[flat] != 1.0) continue;
    tenx::Index index = t.multi_index(flat);
    std::vector<std::size_t> based;
    based.reserve(index.size());
    for (std::size_t i : index) based.push_back(i + 1);
    list.push_back(std::move(based));
  }
  return list;
}

std::string format_index_list(const std::vector<std::size_t>& index) {
  std::string text = "(";
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k > 0) text += ",";
    text += std::to_string(index[k]);
  }
  return text + ")";
}

const char* kind_name(tenx::FormulaKind kind) {
  switch (kind) {
    case tenx::FormulaKind::lower:
      return "lower";
    case tenx::FormulaKind::upper:
      return "upper";
    case tenx::FormulaKind::exact:
      return "exact";
  }
  return "?";
}

// ---------------------------------------------------------------- bounds --

struct BoundsOpts {
  std::string shape_text;
  std::string field_text = "nonneg";
  bool symmetric = false;
  bool psi = false;
  OutputOpts out;
};

int run_bounds(const BoundsOpts& opts) {
  tenx::SpaceSpec space;
  space.shape = tenx::parse_shape(opts.shape_text);
  space.field = tenx::parse_field(opts.field_text);
  space.symmetric = opts.symmetric;
  space.validate();
  const tenx::BoundReport report =
      opts.psi ? tenx::psi_bounds(space) : tenx::phi_bounds(space);
  const char* quantity = opts.psi ? "psi" : "phi";

  if (opts.out.json) {
    ordered_json doc;
    doc["command"] = "bounds";
    doc["shape"] = shape_json(space.shape);
    doc["field"] = tenx::format_field(space.field);
    doc["symmetric"] = space.symmetric;
    doc["quantity"] = quantity;
    doc["lower"] = report.lower;
    doc["upper"] = report.upper;
    doc["exact"] = report.exact ? ordered_json(*report.exact) : ordered_json(nullptr);
    doc["conjectural"] = report.conjectural;
    ordered_json formulas = ordered_json::array();
    for (const tenx::FormulaEntry& entry : report.formulas) {
      formulas.push_back({{"name", entry.name},
                          {"kind", kind_name(entry.kind)},
                          {"value", entry.value},
                          {"description", entry.description}});
    }
    doc["formulas"] = std::move(formulas);
    emit_json(doc);
    return kExitOk;
  }

  std::cout << "space:       " << tenx::format_shape(space.shape) << " over "
            << tenx::format_field(space.field)
            << (space.symmetric ? ", symmetric" : "") << "\n";
  std::cout << "quantity:    " << quantity << "\n";
  std::cout << "lower:       " << fmt(report.lower, opts.out) << "\n";
  std::cout << "upper:       " << fmt(report.upper, opts.out) << "\n";
  if (report.exact) {
    std::cout << "exact:       " << fmt(*report.exact, opts.out) << "\n";
  }
  std::cout << "conjectural: " << (report.conjectural ? "yes" : "no") << "\n";
  std::cout << "formulas:\n";
  for (const tenx::FormulaEntry& entry : report.formulas) {
    std::ostringstream line;
    line << "  " << kind_name(entry.kind) << "  ";
    line << entry.name;
    for (std::size_t pad = entry.name.size(); pad < 26; ++pad) line << ' ';
    line << " " << fmt(entry.value, opts.out);
    std::cout << line.str();
    for (std::size_t pad = line.str().size(); pad < 52; ++pad) std::cout << ' ';
    std::cout << "  " << entry.description << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- construct --

struct ConstructOpts {
  std::string variant;
  std::string shape_text;
  std::string input_path;
  std::string perm_text;
  std::size_t power = 2;
  std::string output_path;
  OutputOpts out;
};

int run_construct(const ConstructOpts& opts) {
  const bool needs_shape =
      opts.variant == "uit" || opts.variant == "upt" || opts.variant == "tall";
  if (needs_shape && opts.shape_text.empty()) {
    throw std::invalid_argument("construct " + opts.variant + " requires --shape");
  }
  if (!needs_shape && opts.input_path.empty()) {
    throw std::invalid_argument("construct " + opts.variant + " requires -i FILE");
  }

  tenx::DenseTensor result({1});
  if (opts.variant == "uit") {
    result = tenx::build_uit(tenx::parse_shape(opts.shape_text));
  } else if (opts.variant == "upt") {
    const tenx::Shape shape = tenx::parse_shape(opts.shape_text);
    const tenx::UitSpec spec = tenx::uit_spec_for(shape);
    const tenx::Permutation perm = opts.perm_text.empty()
                                       ? tenx::Permutation::identity(spec.n)
                                       : parse_permutation(opts.perm_text);
    result = tenx::build_upt(spec.n, perm, spec.partition);
  } else if (opts.variant == "tall") {
    const tenx::Shape shape = tenx::parse_shape(opts.shape_text);
    std::optional<std::size_t> tall_mode;
    for (std::size_t j = 0; j < shape.size(); ++j) {
      std::size_t q = 1;
      for (std::size_t k = 0; k < shape.size(); ++k) {
        if (k != j) q *= shape[k];
      }
      if (shape[j] >= q) {
        tall_mode = j;
        break;
      }
    }
    if (!tall_mode) {
      throw std::invalid_argument(
          "construct tall: no dimension dominates the product of the others");
    }
    const tenx::Permutation perm =
        opts.perm_text.empty() ? tenx::Permutation::identity(shape[*tall_mode])
                               : parse_permutation(opts.perm_text);
    result = tenx::tall_extreme(shape, *tall_mode, perm);
  } else if (opts.variant == "sym-embed") {
    result = tenx::symmetric_embed(tenx::load_tensor(opts.input_path));
  } else if (opts.variant == "symmetrize") {
    result = tenx::symmetrize(tenx::load_tensor(opts.input_path));
  } else if (opts.variant == "compress") {
    result = tenx::kron_power(tenx::load_tensor(opts.input_path), opts.power);
  } else {
    throw std::invalid_argument("unknown construct variant '" + opts.variant + "'");
  }

  const bool zero_one = tenx::is_zero_one(result);
  if (!opts.output_path.empty()) {
    tenx::save_tensor(opts.output_path, result);
    if (opts.out.json) {
      ordered_json doc;
      doc["command"] = "construct";
      doc["variant"] = opts.variant;
      doc["shape"] = shape_json(result.shape());
      doc["zero_one"] = zero_one;
      doc["ones"] = zero_one ? ordered_json(count_ones(result)) : ordered_json(nullptr);
      doc["frobenius"] = tenx::frobenius_norm(result);
      doc["output"] = opts.output_path;
      emit_json(doc);
    } else {
      std::cout << "wrote " << tenx::format_shape(result.shape()) << " tensor";
      if (zero_one) std::cout << " (" << count_ones(result) << " ones)";
      std::cout << " to " << opts.output_path << "\n";
    }
    return kExitOk;
  }
  // No output file: the tensor itself goes to stdout in the JSON format.
  tenx::save_tensor_json(std::cout, result);
  return kExitOk;
}

// ----------------------------------------------------------------- norms --

struct NormsOpts {
  std::string input_path;
  EstimatorOpts estimator;
  bool nonnegative = false;
  OutputOpts out;
};

int run_norms(const NormsOpts& opts) {
  const tenx::DenseTensor t = tenx::load_tensor(opts.input_path);
  const tenx::EstimatorConfig cfg = to_estimator(opts.estimator, opts.nonnegative);
  const tenx::SpectralEstimate estimate = tenx::spectral_norm_estimate(t, cfg);
  const double frobenius = tenx::frobenius_norm(t);
  const double ratio_value = estimate.value / frobenius;

  if (opts.out.json) {
    ordered_json doc;
    doc["command"] = "norms";
    doc["input"] = opts.input_path;
    doc["shape"] = shape_json(t.shape());
    doc["frobenius"] = frobenius;
    doc["spectral_lower"] = estimate.value;
    doc["certified_upper"] = estimate.certified_upper;
    doc["ratio"] = ratio_value;
    doc["converged"] = estimate.converged;
    doc["starts_used"] = estimate.starts_used;
    doc["seed"] = opts.estimator.seed;
    emit_json(doc);
    return kExitOk;
  }
  std::cout << "shape:           " << tenx::format_shape(t.shape()) << "\n";
  std::cout << "frobenius:       " << fmt(frobenius, opts.out) << "\n";
  std::cout << "spectral lower:  " << fmt(estimate.value, opts.out)
            << "  (best multilinear value found)\n";
  std::cout << "certified upper: " << fmt(estimate.certified_upper, opts.out) << "\n";
  std::cout << "ratio:           " << fmt(ratio_value, opts.out) << "\n";
  std::cout << "converged:       " << (estimate.converged ? "yes" : "no")
            << "   starts: " << estimate.starts_used
            << "   seed: " << opts.estimator.seed << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- search --

struct SearchOpts {
  std::string shape_text;
  bool symmetric = false;
  std::optional<std::size_t> max_ones;
  bool no_canonical = false;
  std::string checkpoint_path;
  EstimatorOpts estimator;
  OutputOpts out;
};

int run_search(const SearchOpts& opts) {
  tenx::SearchConfig cfg;
  cfg.shape = tenx::parse_shape(opts.shape_text);
  cfg.symmetric = opts.symmetric;
  cfg.max_ones = opts.max_ones;
  cfg.canonicalize = !opts.no_canonical;
  cfg.parallelism = opts.estimator.jobs;
  cfg.checkpoint_path = opts.checkpoint_path;
  cfg.estimator = to_estimator(opts.estimator, true);
  cfg.estimator.jobs = 1;  // threads are spent across candidates, not starts
  const tenx::SearchResult result = tenx::search_min_ratio(cfg);

  if (opts.out.json) {
    ordered_json doc;
    doc["command"] = "search";
    doc["shape"] = shape_json(cfg.shape);
    doc["symmetric"] = cfg.symmetric;
    doc["max_ones"] =
        cfg.max_ones ? ordered_json(*cfg.max_ones) : ordered_json(nullptr);
    doc["canonicalize"] = cfg.canonicalize;
    doc["seed"] = opts.estimator.seed;
    doc["best_ratio"] = result.best_ratio;
    doc["complete"] = result.complete;
    doc["ones_examined"] = result.ones_examined;
    doc["explored"] = result.explored;
    doc["pruned"] = result.pruned;
    ordered_json witnesses = ordered_json::array();
    for (const tenx::DenseTensor& w : result.witnesses) {
      witnesses.push_back(ones_list(w));
    }
    doc["witnesses"] = std::move(witnesses);
    doc["timing"] = {{"wall_seconds", result.wall_time_seconds}};
    emit_json(doc);
    return kExitOk;
  }

  std::cout << "shape:         " << tenx::format_shape(cfg.shape)
            << (cfg.symmetric ? " (symmetric)" : "") << "\n";
  std::cout << "best ratio:    " << fmt(result.best_ratio, opts.out) << "\n";
  std::cout << "complete:      " << (result.complete ? "yes" : "no (ones cap hit)")
            << "\n";
  std::cout << "ones examined: " << result.ones_examined << "\n";
  std::cout << "explored:      " << result.explored
            << "   pruned: " << result.pruned << "\n";
  std::cout << "seed:          " << opts.estimator.seed << "\n";
  std::cout << "wall time:     " << fmt(result.wall_time_seconds, opts.out) << " s\n";
  std::cout << "witnesses (" << result.witnesses.size() << "):\n";
  const std::size_t shown = std::min<std::size_t>(result.witnesses.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) {
    std::cout << "  ";
    for (const std::vector<std::size_t>& index : ones_list(result.witnesses[i])) {
      std::cout << format_index_list(index) << " ";
    }
    std::cout << "\n";
  }
  if (shown < result.witnesses.size()) {
    std::cout << "  ... and " << (result.witnesses.size() - shown) << " more\n";
  }
  return kExitOk;
}

// --------------------------------------------------------- verify-tables --

struct VerifyOpts {
  EstimatorOpts estimator;
  OutputOpts out;
};

int run_verify_tables(const VerifyOpts& opts) {
  const std::vector<tenx::TableRowReport> rows =
      tenx::verify_tables(to_estimator(opts.estimator, true));
  std::size_t passed = 0;
  for (const tenx::TableRowReport& row : rows) passed += row.pass ? 1 : 0;
  const bool all_pass = passed == rows.size();

  if (opts.out.json) {
    ordered_json doc;
    doc["command"] = "verify-tables";
    doc["seed"] = opts.estimator.seed;
    ordered_json row_docs = ordered_json::array();
    for (const tenx::TableRowReport& row : rows) {
      ordered_json row_doc;
      row_doc["label"] = row.label;
      row_doc["shape"] = shape_json(row.shape);
      row_doc["symmetric"] = row.symmetric;
      row_doc["table_value"] = row.table_value;
      row_doc["reference_value"] = row.reference_value;
      row_doc["witness_ratio"] = row.witness_ratio;
      row_doc["lower_bound"] = row.lower_bound;
      row_doc["pass"] = row.pass;
      row_docs.push_back(std::move(row_doc));
    }
    doc["rows"] = std::move(row_docs);
    doc["passed"] = passed;
    doc["total"] = rows.size();
    doc["all_pass"] = all_pass;
    emit_json(doc);
    return all_pass ? kExitOk : kExitMismatch;
  }

  std::cout << "label     shape    sym  table   witness     reference   lower       "
               "verdict\n";
  for (const tenx::TableRowReport& row : rows) {
    std::ostringstream line;
    line << row.label;
    for (std::size_t pad = row.label.size(); pad < 10; ++pad) line << ' ';
    std::string shape_text = tenx::format_shape(row.shape);
    line << shape_text;
    for (std::size_t pad = shape_text.size(); pad < 9; ++pad) line << ' ';
    line << (row.symmetric ? "yes  " : "no   ");
    std::ostringstream table_text;
    table_text << row.table_value;
    line << table_text.str();
    for (std::size_t pad = table_text.str().size(); pad < 8; ++pad) line << ' ';
    const std::string witness = fmt(row.witness_ratio, opts.out);
    line << witness;
    for (std::size_t pad = witness.size(); pad < 12; ++pad) line << ' ';
    const std::string reference = fmt(row.reference_value, opts.out);
    line << reference;
    for (std::size_t pad = reference.size(); pad < 12; ++pad) line << ' ';
    const std::string lower = fmt(row.lower_bound, opts.out);
    line << lower;
    for (std::size_t pad = lower.size(); pad < 12; ++pad) line << ' ';
    line << (row.pass ? "PASS" : "FAIL");
    std::cout << line.str() << "\n";
  }
  std::cout << passed << "/" << rows.size() << " rows PASS\n";
  return all_pass ? kExitOk : kExitMismatch;
}

// ----------------------------------------------------- check-conjecture2 --

struct ConjectureOpts {
  std::size_t n = 4;
  EstimatorOpts estimator;
  OutputOpts out;
};

int run_check_conjecture(const ConjectureOpts& opts) {
  const tenx::ConjectureReport report =
      tenx::check_conjecture2(opts.n, to_estimator(opts.estimator, true));

  if (opts.out.json) {
    ordered_json doc;
    doc["command"] = "check-conjecture2";
    doc["n"] = report.n;
    doc["shape"] = shape_json(report.shape);
    doc["seed"] = opts.estimator.seed;
    doc["candidates"] = report.candidates;
    doc["evenly_passed"] = report.evenly_passed;
    doc["unfolding"] = report.unfolding;
    doc["excluded"] = report.excluded;
    doc["indeterminate"] = report.indeterminate;
    doc["min_excluded_estimate"] = report.min_excluded_estimate;
    doc["holds"] = report.holds();
    emit_json(doc);
    return report.holds() ? kExitOk : kExitMismatch;
  }

  std::cout << "n:                     " << report.n << "\n";
  std::cout << "shape:                 " << tenx::format_shape(report.shape) << "\n";
  std::cout << "candidates:            " << report.candidates << "\n";
  std::cout << "evenly spread:         " << report.evenly_passed << "\n";
  std::cout << "permutation unfolding: " << report.unfolding << "\n";
  std::cout << "excluded (norm > 1):   " << report.excluded << "\n";
  std::cout << "indeterminate:         " << report.indeterminate << "\n";
  if (report.excluded > 0) {
    std::cout << "min excluded estimate: "
              << fmt(report.min_excluded_estimate, opts.out) << "\n";
  }
  std::cout << "verdict:               "
            << (report.holds() ? "holds (every candidate certified)"
                               : "OPEN (indeterminate candidates remain)")
            << "\n";
  return report.holds() ? kExitOk : kExitMismatch;
}

// ------------------------------------------------------------- order-gap --

struct OrderGapOpts {
  std::string shape_text;
  std::string field_text = "nonneg";
  OutputOpts out;
};

int run_order_gap(const OrderGapOpts& opts) {
  tenx::SpaceSpec space;
  space.shape = tenx::parse_shape(opts.shape_text);
  space.field = tenx::parse_field(opts.field_text);
  space.validate();
  const tenx::OrderGapReport report = tenx::order_gap(space);

  if (opts.out.json) {
    ordered_json doc;
    doc["command"] = "order-gap";
    doc["shape"] = shape_json(space.shape);
    doc["field"] = tenx::format_field(space.field);
    doc["phi_order"] = report.phi_order;
    doc["psi_order"] = report.psi_order;
    doc["collapsed"] = report.collapsed;
    doc["collapse_value"] =
        report.collapsed ? ordered_json(report.collapse_value) : ordered_json(nullptr);
    emit_json(doc);
    return kExitOk;
  }

  std::cout << "shape:      " << tenx::format_shape(space.shape) << " over "
            << tenx::format_field(space.field) << "\n";
  std::cout << "phi order:  " << fmt(report.phi_order, opts.out)
            << "  ((prod n_k)^{-1/4})\n";
  std::cout << "psi order:  " << fmt(report.psi_order, opts.out)
            << "  ((min_j prod_{k!=j} n_k)^{-1/2})\n";
  if (report.collapsed) {
    std::cout << "collapsed:  yes — phi == psi == "
              << fmt(report.collapse_value, opts.out) << " exactly\n";
  } else {
    std::cout << "collapsed:  no — the two ratios have different orders\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Extremal spectral/Frobenius and Frobenius/nuclear ratios of tensor "
      "spaces: constructions, closed-form bounds, spectral estimation, "
      "exhaustive search, and published-table verification."};
  app.require_subcommand(1);
  int rc = kExitOk;

  BoundsOpts bounds_opts;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Closed-form bracket for phi or psi of a tensor space");
  bounds->add_option("--shape", bounds_opts.shape_text, "Shape, e.g. 2x3x4")
      ->required();
  bounds->add_option("--field", bounds_opts.field_text,
                     "complex | real | nonneg | binary")
      ->capture_default_str();
  bounds->add_flag("--symmetric", bounds_opts.symmetric,
                   "Restrict to symmetric tensors (cubical shapes)");
  bounds->add_flag("--psi", bounds_opts.psi,
                   "Report the Frobenius/nuclear ratio instead of phi");
  attach_output_flags(bounds, &bounds_opts.out);
  bounds->callback([&] { rc = run_bounds(bounds_opts); });

  ConstructOpts construct_opts;
  CLI::App* construct = app.add_subcommand(
      "construct", "Build an extremal tensor and write it to a file or stdout");
  construct
      ->add_option("variant", construct_opts.variant,
                   "uit | upt | tall | sym-embed | symmetrize | compress")
      ->required()
      ->check(CLI::IsMember(
          {"uit", "upt", "tall", "sym-embed", "symmetrize", "compress"}));
  construct->add_option("--shape", construct_opts.shape_text,
                        "Target shape (uit, upt, tall)");
  construct->add_option("-i,--input", construct_opts.input_path,
                        "Input tensor file (sym-embed, symmetrize, compress)");
  construct->add_option("--perm", construct_opts.perm_text,
                        "1-based permutation images, e.g. 2,1,4,3 (upt, tall)");
  construct
      ->add_option("--m", construct_opts.power, "Kronecker power (compress)")
      ->capture_default_str();
  construct->add_option("-o,--output", construct_opts.output_path,
                        "Output file (.json or ones text); default: JSON on stdout");
  attach_output_flags(construct, &construct_opts.out);
  construct->callback([&] { rc = run_construct(construct_opts); });

  NormsOpts norms_opts;
  CLI::App* norms = app.add_subcommand(
      "norms", "Frobenius norm, spectral estimate, certified upper bound, ratio");
  norms->add_option("-i,--input", norms_opts.input_path, "Tensor file")->required();
  norms->add_flag("--nonneg", norms_opts.nonnegative,
                  "Restrict starts to the nonnegative orthant (tensor must be >= 0)");
  attach_estimator_flags(norms, &norms_opts.estimator);
  attach_output_flags(norms, &norms_opts.out);
  norms->callback([&] { rc = run_norms(norms_opts); });

  SearchOpts search_opts;
  std::size_t search_max_ones = 0;
  CLI::App* search = app.add_subcommand(
      "search", "Minimum spectral/Frobenius ratio over zero-one tensors of a shape");
  search->add_option("--shape", search_opts.shape_text, "Shape, e.g. 2x2x3")
      ->required();
  search->add_flag("--symmetric", search_opts.symmetric,
                   "Enumerate symmetric tensors only (cubical shapes)");
  CLI::Option* max_ones_opt = search->add_option(
      "--max-ones", search_max_ones, "Stop after this many ones per tensor");
  search->add_flag("--no-canonical", search_opts.no_canonical,
                   "Disable symmetry-class deduplication");
  search->add_option("--checkpoint", search_opts.checkpoint_path,
                     "JSON progress file written after every ones-level");
  attach_estimator_flags(search, &search_opts.estimator);
  attach_output_flags(search, &search_opts.out);
  search->callback([&] {
    if (max_ones_opt->count() > 0) search_opts.max_ones = search_max_ones;
    rc = run_search(search_opts);
  });

  VerifyOpts verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify-tables", "Recompute the 13 published minimal-ratio witnesses");
  attach_estimator_flags(verify, &verify_opts.estimator);
  attach_output_flags(verify, &verify_opts.out);
  verify->callback([&] { rc = run_verify_tables(verify_opts); });

  ConjectureOpts conjecture_opts;
  CLI::App* conjecture = app.add_subcommand(
      "check-conjecture2",
      "Classify evenly-spread unit-norm candidates on the doubled prime shape");
  conjecture->add_option("--n", conjecture_opts.n, "Number of ones (>= 2)")
      ->required();
  attach_estimator_flags(conjecture, &conjecture_opts.estimator);
  attach_output_flags(conjecture, &conjecture_opts.out);
  conjecture->callback([&] { rc = run_check_conjecture(conjecture_opts); });

  OrderGapOpts gap_opts;
  CLI::App* gap = app.add_subcommand(
      "order-gap", "Asymptotic-order comparison of phi and psi (nonneg/binary)");
  gap->add_option("--shape", gap_opts.shape_text, "Shape, e.g. 2x3x4")->required();
  gap->add_option("--field", gap_opts.field_text, "nonneg | binary")
      ->capture_default_str();
  attach_output_flags(gap, &gap_opts.out);
  gap->callback([&] { rc = run_order_gap(gap_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return rc;
}
