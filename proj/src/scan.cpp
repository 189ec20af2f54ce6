#include "qf/scan.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <cstring>
#include <ostream>

namespace qf {

namespace {

std::uint64_t fnv1a_bytes(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t digest_doubles(std::initializer_list<double> values, std::uint64_t h) {
  for (double v : values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    h = fnv1a_bytes(&bits, sizeof(bits), h);
  }
  return h;
}

std::uint64_t digest_matrix(const Matrix& m, std::uint64_t h) {
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r)
      h = digest_doubles({m(r, c).real(), m(r, c).imag()}, h);
  return h;
}

DensityMatrix draw_state(StateEnsemble ensemble, RngStream& rng) {
  if (ensemble == StateEnsemble::hilbert_schmidt)
    return random_density_hs({2, 2}, rng);
  int rank = 1 + static_cast<int>(rng.uniform() * 4.0);
  rank = std::min(rank, 4);
  return random_density_induced({2, 2}, rank, rng);
}

// one fully deterministic sample; everything depends only on (master_seed, k)
ScanRecord scan_sample(std::int64_t k, const FOpSpec& f, std::uint64_t master_seed,
                       const ScanOptions& opts) {
  RngStream rng(master_seed, static_cast<std::uint64_t>(k));
  DensityMatrix rho = draw_state(opts.ensemble, rng);

  ScanRecord rec;
  rec.sample_index = k;
  rec.q_in = qf_two_qubit(rho, f).value;

  DensityMatrix out;
  if (opts.family == ChannelFamily::unital) {
    UnitalQubitChannel ch = random_unital_qubit(rng);
    out = apply_local(ch, rho, opts.side);
    rec.p = ch.p;
    std::uint64_t h = digest_doubles({ch.p}, 0xCBF29CE484222325ULL);
    h = digest_matrix(ch.u, h);
    rec.channel_digest = digest_matrix(ch.v, h);
  } else {
    SemiClassicalChannel ch = random_semiclassical(2, rng);
    out = apply_local(ch, rho, opts.side);
    rec.p = 0.0;
    rec.channel_digest = digest_matrix(ch.basis, 0xCBF29CE484222325ULL);
  }
  rec.q_out = qf_two_qubit(out, f).value;
  rec.violation = rec.q_out - rec.q_in;
  return rec;
}

ScanReport run_scan(std::int64_t n_samples, const FOpSpec& f, std::uint64_t master_seed,
                    const ScanOptions& opts, bool parallel) {
  if (n_samples < 0) throw DomainError(fmt::format("sample count {} < 0", n_samples));
  ScanReport report;
  report.n_samples = n_samples;
  report.f_name = f.name();
  report.master_seed = master_seed;
  report.family = opts.family;
  report.ensemble = opts.ensemble;
  report.records.resize(static_cast<std::size_t>(n_samples));

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < n_samples; ++k)
      report.records[static_cast<std::size_t>(k)] = scan_sample(k, f, master_seed, opts);
  } else {
    for (std::int64_t k = 0; k < n_samples; ++k)
      report.records[static_cast<std::size_t>(k)] = scan_sample(k, f, master_seed, opts);
  }

  // aggregate serially in index order so the report never depends on the
  // thread schedule
  double sum_q_in = 0.0;
  for (const ScanRecord& rec : report.records) {
    sum_q_in += rec.q_in;
    if (rec.violation > opts.violation_threshold) {
      ++report.violation_count;
      report.max_violation = std::max(report.max_violation, rec.violation);
    }
  }
  if (n_samples > 0) {
    report.violation_fraction =
        static_cast<double>(report.violation_count) / static_cast<double>(n_samples);
    report.mean_q_in = sum_q_in / static_cast<double>(n_samples);
  }
  return report;
}

}  // namespace

ScanReport monotonicity_scan(std::int64_t n_samples, const FOpSpec& f,
                             std::uint64_t master_seed, const ScanOptions& opts) {
  return run_scan(n_samples, f, master_seed, opts, opts.parallel);
}

ScanReport monotonicity_scan_serial(std::int64_t n_samples, const FOpSpec& f,
                                    std::uint64_t master_seed, const ScanOptions& opts) {
  return run_scan(n_samples, f, master_seed, opts, false);
}

void write_scan_csv(std::ostream& out, const ScanReport& report, bool full) {
  out << "sample_index,p,q_in,q_out,violation\n";
  std::int64_t n = static_cast<std::int64_t>(report.records.size());
  std::int64_t stride = 1;
  if (!full && n > scan_csv_max_rows)
    stride = (n + scan_csv_max_rows - 1) / scan_csv_max_rows;
  for (std::int64_t k = 0; k < n; k += stride) {
    const ScanRecord& rec = report.records[static_cast<std::size_t>(k)];
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g},{:.17g}\n", rec.sample_index, rec.p,
               rec.q_in, rec.q_out, rec.violation);
  }
}

const char* to_string(ChannelFamily family) {
  return family == ChannelFamily::unital ? "unital" : "semiclassical";
}

const char* to_string(StateEnsemble ensemble) {
  return ensemble == StateEnsemble::hilbert_schmidt ? "hs" : "mixed-rank";
}

}  // namespace qf
