#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qf/channels.hpp"
#include "qf/qfcorr.hpp"

namespace qf {

enum class ChannelFamily { unital, semiclassical };
enum class StateEnsemble { hilbert_schmidt, mixed_rank };

struct ScanOptions {
  ChannelFamily family = ChannelFamily::unital;
  // mixed_rank (rank uniform on 1..4) surfaces the rare monotonicity
  // violations; full-rank hs states almost never do
  StateEnsemble ensemble = StateEnsemble::mixed_rank;
  Side side = Side::a;
  double violation_threshold = 1e-8;
  bool parallel = true;
};

struct ScanRecord {
  std::int64_t sample_index = 0;
  double p = 0.0;  // mixing parameter; 0 for the semiclassical family
  std::uint64_t channel_digest = 0;
  double q_in = 0.0;
  double q_out = 0.0;
  double violation = 0.0;  // q_out - q_in
};

struct ScanReport {
  std::int64_t n_samples = 0;
  std::int64_t violation_count = 0;
  double violation_fraction = 0.0;
  double max_violation = 0.0;
  double mean_q_in = 0.0;
  std::string f_name;
  std::uint64_t master_seed = 0;
  ChannelFamily family = ChannelFamily::unital;
  StateEnsemble ensemble = StateEnsemble::mixed_rank;
  std::vector<ScanRecord> records;
};

// sample k is fully determined by (master_seed, k), so the parallel and the
// serial runs produce identical reports for any thread count
ScanReport monotonicity_scan(std::int64_t n_samples, const FOpSpec& f,
                             std::uint64_t master_seed, const ScanOptions& opts = {});
// reference implementation without the parallel pragma
ScanReport monotonicity_scan_serial(std::int64_t n_samples, const FOpSpec& f,
                                    std::uint64_t master_seed,
                                    const ScanOptions& opts = {});

inline constexpr std::int64_t scan_csv_max_rows = 10000;

// header sample_index,p,q_in,q_out,violation; 17 significant digits; rows
// thinned to scan_csv_max_rows by uniform stride unless full is set
void write_scan_csv(std::ostream& out, const ScanReport& report, bool full = false);

const char* to_string(ChannelFamily family);
const char* to_string(StateEnsemble ensemble);

}  // namespace qf
