#include "iccsi/harness.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "iccsi/minrank.hpp"
#include "iccsi/rng.hpp"
#include "json.hpp"

namespace iccsi {

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
  if (n == 0) return {};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Matrix hamming_error(const Field& f, std::size_t rows, std::size_t cols, std::size_t weight,
                     Rng& rng) {
  if (weight > rows) throw ValidationError("error weight exceeds the code length");
  Matrix w(f, rows, cols);
  std::vector<std::size_t> idx(rows);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < weight; ++k) {
    std::swap(idx[k], idx[k + rng.below(rows - k)]);
    auto row = w.row_span(idx[k]);
    do
      for (auto& x : row) x = rng.element(f);
    while (w.row_is_zero(idx[k]));
  }
  return w;
}

Matrix rank_error(const Field& f, std::size_t rows, std::size_t cols, std::size_t r, Rng& rng) {
  if (r > std::min(rows, cols)) throw ValidationError("error rank exceeds the matrix size");
  for (;;) {
    Matrix w = rng.matrix(f, rows, r) * rng.matrix(f, r, cols);
    if (rank(w) == r) return w;
  }
}

namespace {

void tally(UserTally& t, const std::optional<Matrix>& got, const Matrix& want) {
  if (!got)
    ++t.detected;
  else if (*got == want)
    ++t.success;
  else
    ++t.undetected;
}

}  // namespace

SimReport run_simulation(const Instance& inst, const EncodingMatrix& enc, const SimConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Field& f = inst.field();
  const std::size_t n_len = enc.length();
  const std::size_t t = inst.t();
  if (enc.l.cols() != inst.sender_dim()) throw ValidationError("encoder must have d_S columns");
  if (cfg.model == ErrorModel::Hamming && cfg.magnitude > n_len)
    throw ValidationError("error weight exceeds the code length");
  if (cfg.model == ErrorModel::Rank && cfg.magnitude > cfg.pad + n_len)
    throw ValidationError("error rank exceeds the frame size");
  if (cfg.require_certificate && !verify_ecic(enc.l, inst, cfg.delta, Metric::Hamming).passed())
    throw ValidationError("encoder does not correct " + std::to_string(cfg.delta) + " errors");

  std::vector<UserTransform> transforms;
  std::vector<ParityData> parity;
  if (cfg.model == ErrorModel::Hamming)
    for (std::size_t i = 0; i < inst.m(); ++i) {
      transforms.push_back(UserTransform::build(inst, i));
      parity.push_back(ParityData::build(enc.lvs, transforms.back()));
    }

  SimReport rep;
  rep.config = cfg;
  rep.code_length = n_len;
  rep.users.assign(inst.m(), {});
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = Rng::stream(cfg.seed, trial);
    const Matrix x = rng.matrix(f, inst.n(), t);
    const Matrix y = enc.lvs * x;
    for (std::size_t i = 0; i < inst.m(); ++i) {
      const auto& u = inst.user(i);
      const Matrix cache = u.side_info * x;
      const Matrix want = u.request * x;
      if (cfg.model == ErrorModel::Hamming) {
        const Matrix received = y + hamming_error(f, n_len, t, cfg.magnitude, rng);
        tally(rep.users[i], syndrome_decode(parity[i], transforms[i], received, cache, cfg.delta).demand,
              want);
        continue;
      }
      const Matrix payload = cfg.lvs_shared ? y : hstack(enc.l, y);
      const Frame frame = make_frame(payload, cfg.pad, cfg.lvs_shared);
      const Matrix received =
          frame.matrix + rank_error(f, frame.matrix.rows(), frame.matrix.cols(), cfg.magnitude, rng);
      const TrapOutcome trap = rank_trap_decode(received, frame.layout);
      if (!trap.payload) {
        ++rep.users[i].detected;
        continue;
      }
      if (!(*trap.payload == payload)) ++rep.users[i].trap_undetected;
      Matrix lvs = enc.lvs;
      Matrix got_y = *trap.payload;
      if (!cfg.lvs_shared) {
        lvs = trap.payload->col_range(0, inst.sender_dim()) * inst.sender();
        got_y = trap.payload->col_range(inst.sender_dim(), trap.payload->cols());
      }
      tally(rep.users[i], solve_demand(u.side_info, u.request, cache, lvs, got_y), want);
    }
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

EncodingMatrix concatenated_encoder(const Instance& inst, std::size_t delta, std::uint64_t budget) {
  const std::size_t kappa = min_rank(inst, budget).kappa;
  const auto g = short_code_generator(inst.field(), kappa, 2 * delta + 1);
  if (!g)
    throw ValidationError("no outer code of dimension " + std::to_string(kappa) + " and distance " +
                          std::to_string(2 * delta + 1) + " is known for q = " +
                          std::to_string(inst.field().q()));
  return concat_kappa_bound(inst, delta, g->transpose(), budget);
}

UserDecode decode_user(const Instance& inst, std::size_t i, const Frame& frame,
                       const std::optional<Matrix>& lvs, const Matrix& cache, Metric metric,
                       std::size_t delta) {
  if (i >= inst.m()) throw ValidationError("user index out of range");
  const auto& u = inst.user(i);
  if (cache.rows() != u.side_info.rows() || cache.cols() != inst.t())
    throw ValidationError("cache must be d_i x t", i);
  if (frame.lvs_shared && !lvs) throw ValidationError("frame expects L V_S to be known");
  UserDecode out;
  if (metric == Metric::Rank || frame.layout.v > 0 || !frame.lvs_shared) {
    const TrapOutcome trap = rank_trap_decode(frame.matrix, frame.layout);
    out.saturated = trap.saturated;
    if (!trap.payload) {
      out.failure = trap.failure;
      return out;
    }
    Matrix code = frame.lvs_shared ? *lvs : Matrix();
    Matrix y = *trap.payload;
    if (!frame.lvs_shared) {
      const std::size_t d_s = inst.sender_dim();
      if (y.cols() != d_s + inst.t()) throw ValidationError("payload width must be d_S + t");
      code = y.col_range(0, d_s) * inst.sender();
      y = y.col_range(d_s, y.cols());
    }
    out.demand = solve_demand(u.side_info, u.request, cache, code, y);
    if (!out.demand) out.failure = DecodeFailure::TrapFailureDetected;
    return out;
  }
  if (frame.matrix.rows() != lvs->rows() || frame.matrix.cols() != inst.t())
    throw ValidationError("received word must be N x t");
  if (delta == 0) {
    out.demand = solve_demand(u.side_info, u.request, cache, *lvs, frame.matrix);
    if (!out.demand) out.failure = DecodeFailure::SyndromeNotFound;
    return out;
  }
  const UserTransform ut = UserTransform::build(inst, i);
  std::optional<ParityData> pd;
  try {
    pd = ParityData::build(*lvs, ut);
  } catch (const std::logic_error&) {
    throw ValidationError("encoder does not realize the instance", i);
  }
  const SyndromeOutcome s = syndrome_decode(*pd, ut, frame.matrix, cache, delta);
  out.demand = s.demand;
  out.failure = s.failure;
  return out;
}

std::string report_csv(const SimReport& r) {
  std::ostringstream os;
  os << "user,trials,success,detected,undetected,trap_undetected,success_rate,wilson_lo,wilson_hi\n";
  for (std::size_t i = 0; i < r.users.size(); ++i) {
    const auto& u = r.users[i];
    const auto ci = wilson_interval(u.success, r.config.trials);
    const double rate =
        r.config.trials ? static_cast<double>(u.success) / static_cast<double>(r.config.trials) : 0;
    os << i << ',' << r.config.trials << ',' << u.success << ',' << u.detected << ','
       << u.undetected << ',' << u.trap_undetected << ',' << rate << ',' << ci.lo << ',' << ci.hi
       << '\n';
  }
  return os.str();
}

std::string report_json(const SimReport& r, bool include_timing) {
  nlohmann::json j;
  const auto& c = r.config;
  j["config"] = {{"delta", c.delta},
                 {"model", c.model == ErrorModel::Hamming ? "hamming" : "rank"},
                 {"magnitude", c.magnitude},
                 {"pad", c.pad},
                 {"lvs_shared", c.lvs_shared},
                 {"require_certificate", c.require_certificate},
                 {"trials", c.trials},
                 {"seed", c.seed}};
  j["N"] = r.code_length;
  nlohmann::json users = nlohmann::json::array();
  for (const auto& u : r.users) {
    const auto ci = wilson_interval(u.success, c.trials);
    users.push_back({{"success", u.success},
                     {"detected", u.detected},
                     {"undetected", u.undetected},
                     {"trap_undetected", u.trap_undetected},
                     {"wilson", {ci.lo, ci.hi}}});
  }
  j["users"] = users;
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j.dump(2);
}

namespace {

BoundRow row(BoundReport rep, std::uint64_t q, std::uint64_t t, std::uint64_t n,
             std::uint64_t n_len, std::uint64_t delta, std::uint64_t m) {
  return {std::move(rep), q, t, n, n_len, delta, m};
}

}  // namespace

std::vector<BoundRow> bound_table(BoundTable table) {
  std::vector<BoundRow> out;
  switch (table) {
    case BoundTable::IcExistenceByUsers: {
      struct Preset { std::uint64_t n_len, d, m; };
      static const Preset presets[] = {
          {1, 9, 2}, {1, 9, 3}, {1, 9, 4}, {2, 8, 2}, {2, 8, 3}, {2, 8, 4}, {3, 7, 2},
          {3, 7, 3}, {3, 7, 4}, {4, 6, 2}, {4, 6, 3}, {4, 6, 4}, {5, 5, 2}, {5, 5, 3},
          {5, 5, 4}, {6, 4, 2}, {6, 4, 3}, {6, 4, 4}, {7, 3, 2}, {7, 3, 3}, {7, 3, 4},
          {8, 2, 2}, {8, 2, 3}, {8, 2, 4}, {9, 1, 2}, {9, 1, 3}, {9, 1, 4}, {9, 1, 5}};
      for (const auto& s : presets) {
        out.push_back(row(zippel_ic_prob(4, s.m, s.n_len, 10), 4, 1, 10, s.n_len, 0, s.m));
        const std::vector<std::size_t> w(s.m, s.d);
        out.push_back(row(subspace_existence_prob(w, 10, s.n_len, 4), 4, 1, 10, s.n_len, 0, s.m));
      }
      break;
    }
    case BoundTable::IcExistenceMaxUsers: {
      struct Preset { std::uint64_t q, n_len, m; };
      static const Preset presets[] = {
          {4, 2, 16},   {4, 3, 16},   {4, 4, 16},   {4, 5, 16},   {4, 6, 16},   {4, 7, 16},
          {4, 8, 17},   {4, 9, 21},   {8, 2, 64},   {8, 3, 64},   {8, 4, 64},   {8, 5, 64},
          {8, 6, 64},   {8, 7, 64},   {8, 8, 65},   {8, 9, 73},   {16, 2, 256}, {16, 3, 256},
          {16, 4, 256}, {16, 5, 256}, {16, 6, 256}, {16, 7, 256}, {16, 8, 257}, {16, 9, 273}};
      for (const auto& s : presets) {
        const std::vector<std::size_t> w(s.m, 11 - s.n_len);
        out.push_back(row(subspace_existence_prob(w, 10, s.n_len, s.q), s.q, 1, 10, s.n_len, 0, s.m));
      }
      break;
    }
    case BoundTable::RankEcicExistence: {
      struct Preset { std::uint64_t t, d, n_len, delta; };
      static const Preset presets[] = {
          {6, 11, 16, 1},  {7, 11, 15, 1},  {8, 12, 13, 1},  {11, 12, 12, 1}, {20, 12, 11, 1},
          {10, 11, 20, 2}, {11, 11, 19, 2}, {12, 11, 18, 2}, {14, 11, 17, 2}, {17, 11, 16, 2},
          {9, 12, 19, 2},  {10, 12, 18, 2}, {11, 12, 17, 2}, {13, 12, 16, 2}, {16, 12, 15, 2},
          {16, 12, 19, 3}, {19, 12, 18, 3}, {13, 13, 20, 3}, {14, 13, 19, 3}, {15, 13, 18, 3},
          {16, 13, 18, 3}, {17, 13, 17, 3}, {18, 13, 18, 3}, {19, 13, 17, 3}};
      constexpr std::uint64_t m = 239;
      for (const auto& s : presets) {
        const std::vector<std::size_t> dims(m, s.d);
        out.push_back(row(rank_random_ecic_prob(dims, 20, s.n_len, s.t, s.delta, 16), 16, s.t, 20,
                          s.n_len, s.delta, m));
      }
      break;
    }
  }
  return out;
}

std::vector<BoundRow> instance_bounds(const Instance& inst, std::size_t n_len, std::size_t delta) {
  const std::uint64_t q = inst.field().q();
  const auto counts = equiv_counts(inst, delta);
  const std::uint64_t t = inst.t();
  const std::uint64_t n = inst.n();
  const std::uint64_t m = inst.m();
  std::vector<BoundRow> out;
  if (delta == 0) {
    out.push_back(row(zippel_ic_prob(q, counts.m_prime, n_len, inst.sender_dim()), q, t, n, n_len,
                      0, m));
    out.push_back(row(subspace_existence_prob(intersection_dims(inst), inst.sender_dim(), n_len, q),
                      q, t, n, n_len, 0, m));
  }
  out.push_back(row(hamming_random_ecic_prob(z_class_dims(inst), n, n_len, delta, q,
                                             counts.m_dprime),
                    q, 1, n, n_len, delta, m));
  out.push_back(row(rank_random_ecic_prob(z_delta_class_dims(inst, delta), n, n_len, t, delta, q),
                    q, t, n, n_len, delta, m));
  return out;
}

std::string bound_rows_csv(const std::vector<BoundRow>& rows, int sig) {
  std::ostringstream os;
  os << "name,q,t,n,N,delta,m,value,verdict\n";
  for (const auto& r : rows) {
    os << r.report.name << ',' << r.q << ',' << r.t << ',' << r.n << ',' << r.n_len << ','
       << r.delta << ',' << r.m << ',' << render_value(r.report.value, sig) << ',';
    if (r.report.verdict) os << (*r.report.verdict ? "true" : "false");
    os << '\n';
  }
  return os.str();
}

std::string bound_rows_json(const std::vector<BoundRow>& rows, int sig) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j = {{"name", r.report.name}, {"q", r.q},       {"t", r.t},
                        {"n", r.n},              {"N", r.n_len},   {"delta", r.delta},
                        {"m", r.m},              {"value", render_value(r.report.value, sig)},
                        {"raw", render_value(r.report.raw, sig)}};
    j["verdict"] = r.report.verdict ? nlohmann::json(*r.report.verdict) : nlohmann::json(nullptr);
    if (!r.report.warning.empty()) j["warning"] = r.report.warning;
    out.push_back(j);
  }
  return out.dump(2);
}

}  // namespace iccsi
