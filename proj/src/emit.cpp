#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "opk/experiment.hpp"

namespace opk {

namespace {

/// Full-precision, locale-independent number formatting.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_mu(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string ResultsBundle::manifest_text() const {
  std::ostringstream out;
  out << "artifact = opkrylov " << kVersion << "\n";
  out << "N = " << config.n_fermions << "\n";
  out << "q = " << config.interaction_order << "\n";
  out << "J = " << fmt(config.coupling_scale) << "\n";
  std::vector<std::string> mu_tokens;
  for (double mu : config.mu_values) mu_tokens.push_back(fmt_mu(mu));
  out << "mu_values = " << join(mu_tokens, ",") << "\n";
  out << "t_max = " << fmt(config.t_max) << "\n";
  out << "n_times = " << config.n_times << "\n";
  out << "n_realizations = " << config.n_realizations << "\n";
  out << "seed = " << config.seed << "\n";
  out << "initial_operator = " << config.initial_operator << "\n";
  out << "bases = " << join(config.bases, ",") << "\n";
  out << "outputs = " << config.outputs << "\n";
  for (const auto& agg : aggregates)
    out << "excluded_mu" << fmt_mu(agg.mu) << " = " << agg.n_excluded << "\n";
  out << "expm_fallbacks = " << expm_fallback_count << "\n";
  out << "max_imag_residue = " << fmt(max_imag_residue) << "\n";
  return out.str();
}

void emit(const ResultsBundle& results, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "'");

  for (const auto& agg : results.aggregates) {
    std::ostringstream table;
    table << "jt, k_mean, k_var, c_krylov_mean, c_krylov_var, c_string_mean, c_string_var, "
             "norm_mean\n";
    for (std::size_t t = 0; t < results.times.size(); ++t) {
      table << fmt(results.times[t]) << ", " << fmt(agg.k_mean[t]) << ", " << fmt(agg.k_var[t])
            << ", " << fmt(agg.c_krylov_mean[t]) << ", " << fmt(agg.c_krylov_var[t]) << ", "
            << fmt(agg.c_string_mean[t]) << ", " << fmt(agg.c_string_var[t]) << ", "
            << fmt(agg.norm_mean[t]) << "\n";
    }
    write_file(dir / ("summary_mu" + std::string(fmt_mu(agg.mu)) + ".csv"), table.str());
  }

  if (!results.aggregates.empty()) {
    std::ostringstream dims;
    dims << "mu, mk_mean, mk_var, n_success, n_excluded\n";
    for (const auto& agg : results.aggregates)
      dims << fmt_mu(agg.mu) << ", " << fmt(agg.mk_mean) << ", " << fmt(agg.mk_var) << ", "
           << agg.n_success << ", " << agg.n_excluded << "\n";
    write_file(dir / "dimensions.csv", dims.str());
  }

  for (const auto& r : results.realizations) {
    if (r.excluded) continue;
    std::ostringstream coeffs;
    coeffs << "n, re_a, im_a, b, c\n";
    for (int n = 0; n < r.krylov_dim; ++n)
      coeffs << n << ", " << fmt(r.a(n).real()) << ", " << fmt(r.a(n).imag()) << ", "
             << fmt(r.b(n)) << ", " << fmt(r.c(n)) << "\n";
    char name[64];
    std::snprintf(name, sizeof(name), "coeffs_mu%s_r%04d.csv", fmt_mu(r.mu).c_str(),
                  r.realization);
    write_file(dir / name, coeffs.str());
  }

  write_file(dir / "manifest.txt", results.manifest_text());
}

}  // namespace opk
