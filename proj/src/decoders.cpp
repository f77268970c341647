#include "iccsi/decoders.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "iccsi/error.hpp"

namespace iccsi {

namespace {

void check_identities(const UserTransform& ut) {
  const Field& f = ut.side_info.field();
  const std::size_t n = ut.side_info.cols();
  const std::size_t d = ut.d();
  if (ut.m.rows() != n || ut.m.cols() != n) throw ValidationError("M must be n x n");
  Matrix target(f, d, n);
  for (std::size_t r = 0; r < d; ++r) target(r, r) = 1;
  if (!(ut.side_info * ut.m == target)) throw ValidationError("V M differs from [I | 0]");
  Matrix e(f, 1, n);
  e(0, d) = 1;
  if (!(ut.request * ut.m == e)) throw ValidationError("R M differs from e_{d+1}");
}

}  // namespace

UserTransform UserTransform::build(const Matrix& side_info, const Matrix& request) {
  const Matrix g = vstack(side_info, request);
  auto a = right_inverse(g);
  if (!a) throw ValidationError("request lies in the side-information space");
  UserTransform ut;
  ut.side_info = side_info;
  ut.request = request;
  ut.m = hstack(*a, null_space(g));
  auto inv = solve_right(ut.m, Matrix::identity(ut.m.field(), ut.m.rows()));
  if (!inv) throw std::logic_error("transform is singular");
  ut.m_inv = *inv;
  return ut;
}

UserTransform UserTransform::build(const Instance& inst, std::size_t i) {
  return build(inst.user(i).side_info, inst.user(i).request);
}

UserTransform UserTransform::from_explicit(const Matrix& side_info, const Matrix& request,
                                           const Matrix& m) {
  UserTransform ut;
  ut.side_info = side_info;
  ut.request = request;
  ut.m = m;
  check_identities(ut);
  auto inv = solve_right(m, Matrix::identity(m.field(), m.rows()));
  if (!inv) throw ValidationError("M is singular");
  ut.m_inv = *inv;
  return ut;
}

ParityData ParityData::build(const Matrix& lvs, const UserTransform& ut) {
  const std::size_t d = ut.d();
  const std::size_t n = ut.side_info.cols();
  ParityData pd;
  pd.l_prime = lvs * ut.m;
  const Matrix block = pd.l_prime.col_range(d, n);  // [L'^{d+1} | trailing]
  pd.h_upper = null_space(block.transpose()).transpose();
  Matrix unit(lvs.field(), 1, block.cols());
  unit(0, 0) = 1;
  auto h = solve_left(block, unit);
  if (!h) throw std::logic_error("L'^{d+1} lies in the span of the trailing columns");
  pd.h = *h;
  pd.s = (pd.h * pd.l_prime.col(d))(0, 0);
  return pd;
}

ParityData ParityData::from_explicit(const Matrix& lvs, const UserTransform& ut,
                                     const Matrix& parity) {
  const std::size_t d = ut.d();
  const std::size_t n = ut.side_info.cols();
  ParityData pd;
  pd.l_prime = lvs * ut.m;
  if (parity.rows() == 0 || parity.cols() != lvs.rows())
    throw ValidationError("parity matrix must have N columns");
  pd.h = parity.row(0);
  pd.h_upper = parity.row_range(1, parity.rows());
  const Matrix column = pd.l_prime.col(d);
  const Matrix trailing = pd.l_prime.col_range(d + 1, n);
  if (!(parity * trailing).is_zero()) throw ValidationError("parity does not vanish on C_(i)");
  if (!(pd.h_upper * column).is_zero()) throw ValidationError("H^(i) does not vanish on L'^{d+1}");
  pd.s = (pd.h * column)(0, 0);
  if (pd.s == 0) throw ValidationError("h L'^{d+1} is zero");
  const std::size_t dim_lower = rank(trailing);
  if (rank(parity) != lvs.rows() - dim_lower) throw ValidationError("parity matrix has wrong rank");
  return pd;
}

const char* to_string(DecodeFailure f) {
  switch (f) {
    case DecodeFailure::None: return "none";
    case DecodeFailure::SyndromeNotFound: return "syndrome-not-found";
    case DecodeFailure::TrapFailureDetected: return "trap-failure-detected";
    case DecodeFailure::UndetectedRiskFlag: return "undetected-risk";
  }
  return "none";
}

SyndromeOutcome syndrome_decode(const ParityData& pd, const UserTransform& ut,
                                const Matrix& received, const Matrix& cache, std::size_t delta) {
  const Field& f = received.field();
  const std::size_t n_len = received.rows();
  const std::size_t t = received.cols();
  const std::size_t d = ut.d();
  if (pd.l_prime.rows() != n_len) throw std::invalid_argument("received length differs from N");
  if (cache.rows() != d || cache.cols() != t) throw std::invalid_argument("cache must be d x t");

  SyndromeOutcome out;
  // Step I.
  Matrix residual = received;
  if (d > 0) residual -= pd.l_prime.col_range(0, d) * cache;
  out.alpha = pd.h * residual;
  out.beta = pd.h_upper * residual;

  // Step II.
  const std::size_t limit = std::min(delta, n_len);
  for (std::size_t size = 0; size <= limit && !out.demand; ++size) {
    if (n_len >= 64) throw std::invalid_argument("support enumeration needs N < 64");
    const std::uint64_t end = std::uint64_t{1} << n_len;
    // Gosper's hack: masks with `size` bits in increasing order; bit b is
    // coordinate N-1-b, so this is increasing indicator order.
    std::uint64_t mask = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    while (mask < end) {
      std::vector<std::size_t> support;
      for (std::size_t b = n_len; b-- > 0;)
        if (mask >> b & 1) support.push_back(n_len - 1 - b);
      std::optional<Matrix> values;
      if (support.empty()) {
        if (out.beta.is_zero()) values = Matrix(f, 0, t);
      } else {
        values = solve_right(pd.h_upper.select_cols(support), out.beta);
      }
      if (values) {
        out.epsilon = Matrix(f, n_len, t);
        for (std::size_t k = 0; k < support.size(); ++k)
          out.epsilon.set_block(support[k], 0, values->row(k));
        // Step III.
        Matrix num = out.alpha - pd.h * out.epsilon;
        out.demand = scale(f.inv(pd.s), num);
        break;
      }
      if (mask == 0) break;
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  if (!out.demand) out.failure = DecodeFailure::SyndromeNotFound;
  return out;
}

TrapOutcome rank_trap_decode(const Matrix& received, const TrapLayout& layout) {
  const std::size_t v = layout.v;
  if (received.rows() != v + layout.n_len || received.cols() != v + layout.ell)
    throw std::invalid_argument("received matrix does not match the layout");
  TrapOutcome out;
  const Matrix lower_right = received.block(v, v, layout.n_len, layout.ell);
  if (v == 0) {
    out.t = Matrix(received.field(), layout.n_len, 0);
    out.payload = lower_right;
    return out;
  }
  const Matrix w11 = received.block(0, 0, v, v);
  const Matrix w21 = received.block(v, 0, layout.n_len, v);
  const Matrix w12 = received.block(0, v, v, layout.ell);
  const std::size_t r11 = rank(w11);
  if (r11 < rank(vstack(w11, w21))) {
    out.failure = DecodeFailure::TrapFailureDetected;
    return out;
  }
  auto t = solve_left(w11, w21);
  if (!t) throw std::logic_error("trap solve failed despite equal ranks");
  out.t = *t;
  out.payload = lower_right - out.t * w12;
  out.saturated = r11 == v;
  return out;
}

std::optional<Matrix> solve_demand(const Matrix& side_info, const Matrix& request,
                                   const Matrix& cache, const Matrix& lvs,
                                   const Matrix& received) {
  const std::size_t n = request.cols();
  const Matrix stacked = vstack(hstack(side_info, cache), hstack(lvs, received));
  const Matrix reduced = rref(stacked).rref;
  const Matrix s = reduced.col_range(0, n);
  const Matrix t = reduced.col_range(n, reduced.cols());
  auto z = solve_left(s, request);
  if (!z) return std::nullopt;
  return *z * t;
}

std::optional<Matrix> solve_demand(const Instance& inst, std::size_t i, const Matrix& lvs,
                                   const Matrix& received, const Matrix& cache) {
  return solve_demand(inst.user(i).side_info, inst.user(i).request, cache, lvs, received);
}

Frame make_frame(const Matrix& payload, std::size_t v, bool lvs_shared) {
  Frame fr;
  fr.layout = {v, payload.rows(), payload.cols()};
  fr.lvs_shared = lvs_shared;
  fr.matrix = Matrix(payload.field(), v + payload.rows(), v + payload.cols());
  fr.matrix.set_block(v, v, payload);
  return fr;
}

namespace {

constexpr char kMagic[4] = {'I', 'C', 'C', '1'};

void put_u32(std::string& out, std::uint32_t x) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((x >> (8 * k)) & 0xff));
}

std::uint32_t get_u32(std::string_view in, std::size_t off) {
  std::uint32_t x = 0;
  for (int k = 0; k < 4; ++k)
    x |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[off + k])) << (8 * k);
  return x;
}

}  // namespace

std::string encode_frame(const Frame& frame) {
  const Field& f = frame.matrix.field();
  const unsigned p = f.p();
  const unsigned e = f.e();
  const unsigned bits = std::bit_width(p - 1);
  std::string out(kMagic, 4);
  for (std::uint32_t x : {p, e, static_cast<unsigned>(frame.layout.v),
                          static_cast<unsigned>(frame.layout.n_len),
                          static_cast<unsigned>(frame.layout.ell),
                          static_cast<unsigned>(frame.lvs_shared ? 1 : 0)})
    put_u32(out, x);
  std::uint64_t acc = 0;
  unsigned filled = 0;
  for (std::size_t r = 0; r < frame.matrix.rows(); ++r)
    for (Elem x : frame.matrix.row_span(r))
      for (unsigned k = 0; k < e; ++k) {
        acc |= static_cast<std::uint64_t>(x % p) << filled;
        x /= p;
        filled += bits;
        while (filled >= 8) {
          out.push_back(static_cast<char>(acc & 0xff));
          acc >>= 8;
          filled -= 8;
        }
      }
  if (filled > 0) out.push_back(static_cast<char>(acc & 0xff));
  return out;
}

Frame decode_frame(std::string_view bytes, const Field& field) {
  constexpr std::size_t kHeader = 4 + 6 * 4;
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw ValidationError("not a broadcast frame");
  const std::uint32_t p = get_u32(bytes, 4);
  const std::uint32_t e = get_u32(bytes, 8);
  if (p != field.p() || e != field.e()) throw ValidationError("frame field differs from the instance");
  Frame fr;
  fr.layout = {get_u32(bytes, 12), get_u32(bytes, 16), get_u32(bytes, 20)};
  const std::uint32_t flags = get_u32(bytes, 24);
  if (flags > 1) throw ValidationError("unknown frame flags");
  fr.lvs_shared = flags & 1;
  const std::size_t rows = fr.layout.v + fr.layout.n_len;
  const std::size_t cols = fr.layout.v + fr.layout.ell;
  const unsigned bits = std::bit_width(p - 1);
  const std::uint64_t total_bits = static_cast<std::uint64_t>(rows) * cols * e * bits;
  if (bytes.size() != kHeader + (total_bits + 7) / 8)
    throw ValidationError("frame length does not match its header");
  fr.matrix = Matrix(field, rows, cols);
  std::uint64_t bitpos = 0;
  auto read_digit = [&]() {
    std::uint32_t x = 0;
    for (unsigned b = 0; b < bits; ++b, ++bitpos) {
      const auto byte = static_cast<unsigned char>(bytes[kHeader + bitpos / 8]);
      x |= static_cast<std::uint32_t>((byte >> (bitpos % 8)) & 1) << b;
    }
    return x;
  };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      Elem value = 0;
      Elem place = 1;
      for (unsigned k = 0; k < e; ++k) {
        const std::uint32_t digit = read_digit();
        if (digit >= p) throw ValidationError("frame digit out of range");
        value += digit * place;
        place *= p;
      }
      fr.matrix(r, c) = value;
    }
  return fr;
}

}  // namespace iccsi
