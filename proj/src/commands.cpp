#include "framelab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include <json.hpp>

#include "framelab/frames.hpp"
#include "framelab/linalg.hpp"
#include "framelab/search.hpp"
#include "framelab/sim.hpp"
#include "framelab/spectral.hpp"
#include "framelab/version.hpp"

namespace framelab::cli {

namespace {

using json = nlohmann::ordered_json;

FrameKind parse_kind(const std::string& kind) {
  if (kind == "real") return FrameKind::Real;
  if (kind == "complex") return FrameKind::Complex;
  fail(ErrorCode::InvalidSpec, "kind must be 'real' or 'complex', got '" + kind + "'");
}

DedupMode parse_mode(const std::string& mode) {
  if (mode == "rotation") return DedupMode::Rotation;
  if (mode == "rotation-reflection") return DedupMode::RotationAndReflection;
  fail(ErrorCode::InvalidSpec,
       "mode must be 'rotation' or 'rotation-reflection', got '" + mode + "'");
}

const char* mode_name(DedupMode mode) {
  return mode == DedupMode::Rotation ? "rotation" : "rotation-reflection";
}

PatternMask parse_pattern(const std::string& text, int n) {
  const PatternMask mask = PatternMask::from_string(text);
  if (mask.n() != n)
    fail(ErrorCode::InvalidPattern, "pattern length " + std::to_string(mask.n()) +
                                        " does not match n = " + std::to_string(n));
  return mask;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json report_to_json(const SpectrumReport& report) {
  json out;
  out["pattern"] = report.pattern.to_string();
  json eigs = json::array();
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
    eigs.push_back(report.eigenvalues(i));
  out["eigenvalues"] = std::move(eigs);
  out["lambda_min"] = report.lambda_min;
  out["lambda_max"] = report.lambda_max;
  if (report.inv_sum_unbounded)
    out["inv_sum"] = "unbounded";
  else
    out["inv_sum"] = report.inv_sum;
  out["inv_sum_unbounded"] = report.inv_sum_unbounded;
  out["product"] = report.product;
  out["det_formula"] = report.det_formula;
  out["is_tight"] = report.is_tight;
  return out;
}

std::string render(const json& envelope) { return envelope.dump(2) + "\n"; }

json make_envelope(const std::string& command, json inputs, json results) {
  json out;
  out["command"] = command;
  out["inputs"] = std::move(inputs);
  out["results"] = std::move(results);
  out["version"] = kVersionString;
  return out;
}

bool real_kind_exists(int k) { return k % 2 == 1; }

}  // namespace

int exit_code_for(const Error& error) {
  return error.code() == ErrorCode::TooLarge ? kExitTooLarge : kExitInvalidInput;
}

std::string run_build(const BuildArgs& args) {
  FrameSpec spec{args.n, args.k, parse_kind(args.kind), args.alpha};
  spec.validate();
  const ComplexMatrix g = generator(spec);

  json inputs;
  inputs["n"] = args.n;
  inputs["k"] = args.k;
  inputs["kind"] = args.kind;
  if (args.alpha) inputs["alpha"] = *args.alpha;
  if (!args.pattern.empty()) inputs["pattern"] = args.pattern;

  json results;
  results["alpha"] = spec.alpha();
  results["beta"] = spec.beta();
  results["generator"] = matrix_to_json(g);
  if (!args.pattern.empty()) {
    const PatternMask mask = parse_pattern(args.pattern, args.n);
    results["systematic_generator"] = matrix_to_json(systematic_generator(g, mask));
  }
  return render(make_envelope("build", std::move(inputs), std::move(results)));
}

std::string run_spectrum(const SpectrumArgs& args) {
  FrameSpec spec{args.n, args.k, parse_kind(args.kind), std::nullopt};
  spec.validate();
  const PatternMask mask = parse_pattern(args.pattern, args.n);
  const SpectrumReport report = spectrum_report(generator(spec), mask);

  json inputs;
  inputs["n"] = args.n;
  inputs["k"] = args.k;
  inputs["kind"] = args.kind;
  inputs["pattern"] = args.pattern;
  return render(make_envelope("spectrum", std::move(inputs), report_to_json(report)));
}

std::string run_search(const SearchArgs& args) {
  FrameSpec spec{args.n, args.k, parse_kind(args.kind), std::nullopt};
  const DedupMode mode = parse_mode(args.mode);
  if (args.format != "json" && args.format != "csv")
    fail(ErrorCode::InvalidSpec, "format must be 'json' or 'csv'");
  const SearchResult result = rank_patterns(spec, mode);

  if (args.format == "csv") {
    std::string out = "pattern,lambda_min,lambda_max,inv_sum,product,tight\n";
    char line[256];
    for (const PatternClass& cls : result.classes) {
      std::snprintf(line, sizeof line, "%s,%.12g,%.12g,%.12g,%.12g,%s\n",
                    cls.canonical.to_string().c_str(), cls.report.lambda_min,
                    cls.report.lambda_max, cls.report.inv_sum, cls.report.product,
                    cls.report.is_tight ? "true" : "false");
      out += line;
    }
    return out;
  }

  json inputs;
  inputs["n"] = args.n;
  inputs["k"] = args.k;
  inputs["kind"] = args.kind;
  inputs["mode"] = mode_name(mode);
  inputs["format"] = args.format;

  json classes = json::array();
  for (const PatternClass& cls : result.classes) {
    json entry = report_to_json(cls.report);
    entry["class_size"] = cls.size;
    classes.push_back(std::move(entry));
  }
  json results;
  results["class_count"] = result.classes.size();
  results["classes"] = std::move(classes);
  results["best"] = result.classes[result.best_index].canonical.to_string();
  results["worst"] = result.classes[result.worst_index].canonical.to_string();
  return render(make_envelope("search", std::move(inputs), std::move(results)));
}

std::string run_simulate(const SimulateArgs& args) {
  FrameSpec spec{args.n, args.k, parse_kind(args.kind), std::nullopt};
  spec.validate();
  const PatternMask mask = parse_pattern(args.pattern, args.n);

  NoiseModel noise;
  if (args.noise == "iid")
    noise = NoiseModel::iid_additive(args.sigma_q2);
  else if (args.noise == "quantizer")
    noise = NoiseModel::uniform_quantizer(args.bits, args.range);
  else
    fail(ErrorCode::InvalidModel, "noise must be 'iid' or 'quantizer'");

  const SimReport report =
      simulate(spec, mask, noise, args.sigma_x2, args.trials, args.seed);

  json inputs;
  inputs["n"] = args.n;
  inputs["k"] = args.k;
  inputs["kind"] = args.kind;
  inputs["pattern"] = args.pattern;
  inputs["noise"] = args.noise;
  if (noise.kind == NoiseModel::Kind::IidAdditive) {
    inputs["sigma_q2"] = args.sigma_q2;
  } else {
    inputs["bits"] = args.bits;
    inputs["range"] = args.range;
  }
  inputs["sigma_x2"] = args.sigma_x2;
  inputs["trials"] = args.trials;
  inputs["seed"] = args.seed;

  json results;
  results["trials"] = report.trials;
  results["seed"] = report.seed;
  results["empirical_sigma_y2"] = report.empirical_sigma_y2;
  results["predicted_sigma_y2"] = report.predicted_sigma_y2;
  results["empirical_mse"] = report.empirical_mse;
  results["predicted_mse"] = report.predicted_mse;
  results["sigma_q2_effective"] = report.sigma_q2_effective;
  return render(make_envelope("simulate", std::move(inputs), std::move(results)));
}

namespace {

struct Claim {
  std::string name;
  bool pass = true;
  json detail;
};

// G G^H is circulant Toeplitz with unit diagonal, for every constructible
// kind of every (n, k) up to n_max.
Claim check_gram_structure(int n_max) {
  Claim claim;
  claim.name = "gram-circulant-structure";
  double worst = 0.0;
  int combos = 0;
  for (int n = 1; n <= n_max; ++n)
    for (int k = 1; k <= n; ++k)
      for (const FrameKind kind : {FrameKind::Real, FrameKind::Complex}) {
        if (kind == FrameKind::Real && !real_kind_exists(k)) continue;
        const FrameSpec spec{n, k, kind, std::nullopt};
        const ComplexMatrix gram = [&] {
          const ComplexMatrix g = generator(spec);
          return ComplexMatrix(g * g.adjoint());
        }();
        double residual = 0.0;
        for (int r = 0; r + 1 < n; ++r)
          for (int c = 0; c + 1 < n; ++c)
            residual = std::max(residual, std::abs(gram(r, c) - gram(r + 1, c + 1)));
        for (int r = 0; r + 1 < n; ++r)
          residual = std::max(residual, std::abs(gram(r, n - 1) - gram(r + 1, 0)));
        for (int r = 0; r < n; ++r)
          residual = std::max(residual, std::abs(gram(r, r) - Complex(1.0, 0.0)));
        worst = std::max(worst, residual);
        if (residual > 1e-10 || !is_toeplitz(gram, 1e-10) || !is_circulant(gram, 1e-10))
          claim.pass = false;
        ++combos;
      }
  claim.detail["combinations"] = combos;
  claim.detail["worst_residual"] = worst;
  claim.detail["tolerance"] = 1e-10;
  return claim;
}

// The smallest eigenvalue of every row-subset Gram stays at or below one and
// the largest at or above one. Exhaustive subsets up to n = 12, one
// representative per rotation orbit beyond (subset Grams depend on row
// differences only).
Claim check_eig_straddle(int n_max) {
  Claim claim;
  claim.name = "eig-straddle-unity";
  double worst_min = 0.0;  // max over sweep of (lambda_min - 1)
  double worst_max = 0.0;  // max over sweep of (1 - lambda_max)
  std::int64_t subsets = 0;
  for (int n = 1; n <= n_max; ++n) {
    const bool orbits_only = n > 12;
    for (int k = 1; k <= n; ++k) {
      const ComplexMatrix g = generator(FrameSpec{n, k, FrameKind::Complex, std::nullopt});
      const std::uint64_t limit = 1ull << n;
      for (std::uint64_t v = 1; v < limit; ++v) {
        const PatternMask mask(n, v);
        if (orbits_only && canonical_pattern(mask, DedupMode::Rotation).bits() != v)
          continue;
        const ExtremeEigs ext = subframe_extreme_eigs(g, mask);
        worst_min = std::max(worst_min, ext.lambda_min - 1.0);
        worst_max = std::max(worst_max, 1.0 - ext.lambda_max);
        if (ext.lambda_min > 1.0 + 1e-9 || ext.lambda_max < 1.0 - 1e-9)
          claim.pass = false;
        ++subsets;
      }
    }
  }
  claim.detail["subsets"] = subsets;
  claim.detail["worst_lambda_min_excess"] = worst_min;
  claim.detail["worst_lambda_max_shortfall"] = worst_max;
  claim.detail["tolerance"] = 1e-9;
  return claim;
}

// For n not a multiple of k, the best achievable lambda_min over all
// k-subsets stays strictly below one and below (n/k - 1)/floor(n/k).
Claim check_lambda_min_bound(int n_max) {
  Claim claim;
  claim.name = "lambda-min-strict-bound";
  int pairs = 0;
  double min_margin = 1.0;
  double overall_max = 0.0;
  json rows = json::array();
  for (int n = 2; n <= n_max; ++n)
    for (int k = 2; k < n; ++k) {
      if (n % k == 0) continue;
      const LambdaMinSweep sweep = max_lambda_min_sweep(n, k);
      if (!sweep.holds) claim.pass = false;
      min_margin = std::min(min_margin, sweep.bound - sweep.max_lambda_min);
      overall_max = std::max(overall_max, sweep.max_lambda_min);
      json row;
      row["n"] = n;
      row["k"] = k;
      row["bound"] = sweep.bound;
      row["max_lambda_min"] = sweep.max_lambda_min;
      rows.push_back(std::move(row));
      ++pairs;
    }
  claim.detail["pairs"] = pairs;
  claim.detail["min_bound_margin"] = min_margin;
  claim.detail["max_lambda_min_overall"] = overall_max;
  claim.detail["per_pair"] = std::move(rows);
  return claim;
}

Claim check_sine_product(int n_max_identity) {
  Claim claim;
  claim.name = "sine-product-identity";
  double worst = 0.0;
  for (int n = 2; n <= n_max_identity; ++n) {
    const SineProduct identity = sine_product_identity(n);
    worst = std::max(worst, std::abs(identity.log_lhs - identity.log_rhs));
  }
  if (worst > 1e-9) claim.pass = false;
  claim.detail["n_max"] = n_max_identity;
  claim.detail["worst_log_gap"] = worst;
  claim.detail["tolerance"] = 1e-9;
  return claim;
}

// Minimizing the inverse-eigenvalue sum and maximizing the eigenvalue
// product select the same pattern classes.
Claim check_variance_det_duality(int n_max) {
  Claim claim;
  claim.name = "variance-determinant-duality";
  int specs = 0;
  for (int n = 2; n <= n_max; ++n)
    for (int k = 1; k <= n; ++k) {
      const SearchResult result =
          rank_patterns(FrameSpec{n, k, FrameKind::Complex, std::nullopt});
      double best_inv = result.classes.front().report.inv_sum;
      double best_prod = 0.0;
      for (const PatternClass& cls : result.classes) {
        best_inv = std::min(best_inv, cls.report.inv_sum);
        best_prod = std::max(best_prod, cls.report.product);
      }
      std::set<std::uint64_t> argmin, argmax;
      for (const PatternClass& cls : result.classes) {
        if (cls.report.inv_sum <= best_inv + 1e-9) argmin.insert(cls.canonical.bits());
        if (cls.report.product >= best_prod - 1e-9) argmax.insert(cls.canonical.bits());
      }
      if (argmin != argmax) claim.pass = false;
      ++specs;
    }
  claim.detail["specs"] = specs;
  claim.detail["tolerance"] = 1e-9;
  return claim;
}

// Tight systematic frames exist exactly when k divides n, and then exactly
// for the evenly spaced pattern class.
Claim check_tight_existence(int n_max) {
  Claim claim;
  claim.name = "tight-existence";
  int specs = 0;
  for (int n = 2; n <= n_max; ++n)
    for (int k = 1; k <= n; ++k) {
      const SearchResult result =
          rank_patterns(FrameSpec{n, k, FrameKind::Complex, std::nullopt});
      std::vector<std::uint64_t> tight;
      for (const PatternClass& cls : result.classes)
        if (cls.report.is_tight) tight.push_back(cls.canonical.bits());
      if (n % k == 0) {
        const std::uint64_t expected =
            canonical_pattern(PatternMask::evenly_spaced(n, k), DedupMode::Rotation).bits();
        if (tight.size() != 1 || tight.front() != expected) claim.pass = false;
      } else if (!tight.empty()) {
        claim.pass = false;
      }
      ++specs;
    }
  claim.detail["specs"] = specs;
  return claim;
}

}  // namespace

VerifyOutput run_verify(const VerifyArgs& args) {
  if (args.n_max < 1 || args.n_max > 16)
    fail(ErrorCode::InvalidSpec, "n-max must lie in 1..16");

  std::vector<Claim> claims;
  claims.push_back(check_gram_structure(args.n_max));
  claims.push_back(check_eig_straddle(args.n_max));
  claims.push_back(check_lambda_min_bound(args.n_max));
  claims.push_back(check_sine_product(64));
  claims.push_back(check_variance_det_duality(args.n_max));
  claims.push_back(check_tight_existence(args.n_max));

  json inputs;
  inputs["n_max"] = args.n_max;
  json claim_rows = json::array();
  bool all = true;
  for (const Claim& claim : claims) {
    json row;
    row["claim"] = claim.name;
    row["pass"] = claim.pass;
    row["detail"] = claim.detail;
    claim_rows.push_back(std::move(row));
    all = all && claim.pass;
  }
  json results;
  results["claims"] = std::move(claim_rows);
  results["all_passed"] = all;

  VerifyOutput out;
  out.text = render(make_envelope("verify", std::move(inputs), std::move(results)));
  out.all_passed = all;
  return out;
}

}  // namespace framelab::cli
