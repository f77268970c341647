#pragma once

#include <string>
#include <vector>

#include "iccsi/instance.hpp"
#include "iccsi/matrix.hpp"
#include "iccsi/rng.hpp"
#include "oracles.hpp"

namespace support {

inline std::string data_path(const std::string& name) { return std::string(ICCSI_DATA_DIR) + "/" + name; }

inline iccsi::Instance load(const std::string& name) { return iccsi::load_instance(data_path(name)); }

inline oracle::Gf gf_of(const iccsi::Field& f) {
  return oracle::Gf(f.p(), f.e(), oracle::Vec(f.modulus().begin(), f.modulus().end()));
}

inline oracle::Mat rows_of(const iccsi::Matrix& m) {
  oracle::Mat out;
  for (const auto& r : m.to_rows()) out.emplace_back(r.begin(), r.end());
  return out;
}

inline oracle::Vec vec_of(const iccsi::Matrix& m) {
  oracle::Vec v(m.data().begin(), m.data().end());
  return v;
}

inline std::vector<oracle::User> users_of(const iccsi::Instance& inst) {
  std::vector<oracle::User> out;
  for (const auto& u : inst.users()) out.push_back({rows_of(u.side_info), vec_of(u.request)});
  return out;
}

/// Random valid instance: n in [1, n_max], m in [1, m_max], random sender
/// space, coded side information of dimension < n, requests in the sender
/// space and outside the side information.
inline iccsi::Instance random_instance(const iccsi::Field& f, iccsi::Rng& rng, std::size_t n_max,
                                       std::size_t m_max, std::size_t t = 1) {
  using iccsi::Matrix;
  for (;;) {
    const std::size_t n = 1 + rng.below(n_max);
    const std::size_t m = 1 + rng.below(m_max);
    const std::size_t d_s = 1 + rng.below(n);
    const Matrix sender = iccsi::row_space_basis(rng.matrix(f, d_s, n));
    if (sender.rows() == 0) continue;
    std::vector<iccsi::UserSpec> users;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
        const Matrix v = rng.matrix(f, rng.below(n), n);
        const Matrix r = rng.matrix(f, 1, sender.rows()) * sender;
        if (r.is_zero() || (v.rows() > 0 && iccsi::in_row_space(v, r))) continue;
        users.push_back({v, r});
        placed = true;
      }
      ok = placed;
    }
    if (ok) return iccsi::Instance::create(f, t, n, sender, users);
  }
}

}  // namespace support
