#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iccsi/bounds.hpp"
#include "iccsi/codec.hpp"
#include "iccsi/decoders.hpp"
#include "iccsi/error.hpp"
#include "iccsi/harness.hpp"
#include "iccsi/instance.hpp"
#include "iccsi/minrank.hpp"
#include "iccsi/rng.hpp"
#include "json.hpp"

namespace {

using namespace iccsi;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitDecode = 3;
constexpr int kExitBudget = 4;

struct DecodeFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "a,b,c;d,e,f" with rows split on ';'.
Matrix parse_matrix_arg(const std::string& text, const Field& f) {
  std::vector<std::vector<Elem>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Elem> r;
    std::stringstream es(row);
    std::string tok;
    while (std::getline(es, tok, ',')) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (v < 0 || !f.contains(static_cast<std::uint64_t>(v))) throw std::out_of_range(tok);
        r.push_back(static_cast<Elem>(v));
      } catch (const std::exception&) {
        throw ValidationError("bad matrix entry \"" + tok + "\"");
      }
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ValidationError("empty matrix argument");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ValidationError("ragged matrix argument");
  return Matrix::from_rows(f, rows);
}

/// Accepts a single row as a column when a column is expected.
Matrix parse_shaped(const std::string& text, const Field& f, std::size_t rows, std::size_t cols,
                    const std::string& what) {
  Matrix m = parse_matrix_arg(text, f);
  if (cols == 1 && m.rows() == 1 && m.cols() == rows) m = m.transpose();
  if (m.rows() != rows || m.cols() != cols)
    throw ValidationError(what + " must be " + std::to_string(rows) + " x " + std::to_string(cols));
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw ValidationError("cannot write " + path);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

json matrix_json(const Matrix& m) { return m.to_rows(); }

std::string row_text(const Matrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += (s.empty() ? "" : " ") + std::to_string(m(r, c));
  return s;
}

struct Options {
  std::string instance;
  std::string out = "text";
  std::string output;
  std::uint64_t seed = 1;
  std::size_t delta = 0;
  std::string metric = "hamming";
  std::uint64_t budget = kDefaultBudget;
  bool verbose = false;
  // bounds
  bool table2 = false, table3 = false, table4 = false, zippel = false;
  std::uint64_t q = 0, m_prime = 0, d_s = 0;
  std::size_t length = 0;
  int sig = 4;
  // encode / decode / simulate
  std::string method = "coset";
  std::string encoder;
  std::string encoder_out;
  std::uint64_t attempts = 1000;
  std::string data;
  std::string cache;
  std::string frame;
  std::size_t pad = 0;
  bool send_encoder = false;
  std::string error;
  std::size_t error_weight = 0, error_rank = 0;
  std::optional<std::size_t> user;
  std::string sim_error = "hamming:0";
  std::uint64_t trials = 1000;
  bool guarantee = false;
  bool timing = false;
};

EncodingMatrix obtain_encoder(const Instance& inst, const Options& o) {
  if (!o.encoder.empty()) return load_encoder(o.encoder, inst);
  const Metric metric = parse_metric(o.metric);
  if (o.method == "coset") return coset_encoder(inst, o.budget);
  if (o.method == "concatenated") return concatenated_encoder(inst, o.delta, o.budget);
  if (o.method == "random") {
    const std::size_t n_len = o.length ? o.length : min_rank(inst, o.budget).kappa;
    VerifyOptions vo;
    vo.budget = o.budget;
    vo.seed = o.seed;
    auto res = random_ic_search(inst, n_len, o.delta, metric, o.attempts, o.seed, vo);
    if (!res.encoder)
      throw ValidationError("no encoder of length " + std::to_string(n_len) + " found in " +
                            std::to_string(res.attempts) + " attempts");
    return *res.encoder;
  }
  throw ValidationError("unknown method \"" + o.method + "\"");
}

int cmd_validate(const Options& o) {
  const Instance inst = load_instance(o.instance);
  if (o.verbose) {
    std::cout << serialize_instance(inst) << '\n';
    return kExitOk;
  }
  std::cout << "valid: q=" << inst.field().q() << " t=" << inst.t() << " n=" << inst.n()
            << " m=" << inst.m() << " d_S=" << inst.sender_dim() << '\n';
  return kExitOk;
}

int cmd_minrank(const Options& o) {
  const Instance inst = load_instance(o.instance);
  const MinRankResult k = min_rank(inst, o.budget);
  const AlphaResult a = alpha(inst, o.budget);
  const LengthBracket b = alpha_kappa_bracket(a.alpha, k.kappa, o.delta, inst.field().q());
  const std::string upper = b.upper ? std::to_string(*b.upper) : "";
  if (o.out == "json") {
    json j = {{"kappa", k.kappa},
              {"alpha", a.alpha},
              {"kappa_witness", matrix_json(k.witness)},
              {"alpha_witness", matrix_json(a.witness)},
              {"bracket", {{"delta", b.delta}, {"lower", b.lower}}}};
    j["bracket"]["upper"] = b.upper ? json(*b.upper) : json(nullptr);
    emit(j.dump(2) + "\n", o.output);
  } else if (o.out == "csv") {
    std::ostringstream os;
    os << "name,value\nkappa," << k.kappa << "\nalpha," << a.alpha << "\nbracket_lower," << b.lower
       << "\nbracket_upper," << upper << '\n';
    emit(os.str(), o.output);
  } else {
    std::ostringstream os;
    os << "kappa " << k.kappa << "\nalpha " << a.alpha << "\nkappa_witness\n"
       << to_string(k.witness) << "\nalpha_witness\n"
       << to_string(a.witness) << "\nbracket delta=" << b.delta << " lower=" << b.lower
       << " upper=" << (b.upper ? upper : "unknown") << '\n';
    emit(os.str(), o.output);
  }
  return kExitOk;
}

int cmd_bounds(const Options& o) {
  std::vector<BoundRow> rows;
  auto add = [&](const std::vector<BoundRow>& r) { rows.insert(rows.end(), r.begin(), r.end()); };
  if (o.table2) add(bound_table(BoundTable::IcExistenceByUsers));
  if (o.table3) add(bound_table(BoundTable::IcExistenceMaxUsers));
  if (o.table4) add(bound_table(BoundTable::RankEcicExistence));
  if (o.zippel) {
    if (!o.q || !o.d_s) throw ValidationError("--zippel needs --q and --sender-dim");
    rows.push_back({zippel_ic_prob(o.q, o.m_prime, o.length, o.d_s), o.q, 1, o.d_s, o.length, 0,
                    o.m_prime});
  }
  if (!o.instance.empty()) {
    if (!o.length) throw ValidationError("--instance needs --length");
    add(instance_bounds(load_instance(o.instance), o.length, o.delta));
  }
  if (rows.empty()) throw ValidationError("choose a table preset, --zippel, or --instance");
  emit(o.out == "json" ? bound_rows_json(rows, o.sig) + "\n" : bound_rows_csv(rows, o.sig),
       o.output);
  return kExitOk;
}

int cmd_encode(const Options& o) {
  const Instance inst = load_instance(o.instance);
  const EncodingMatrix enc = obtain_encoder(inst, o);
  VerifyOptions vo;
  vo.budget = o.budget;
  vo.seed = o.seed;
  const auto cert = verify_ecic(enc.l, inst, o.delta, parse_metric(o.metric), vo);
  const std::string enc_json = serialize_encoder(enc, cert) + "\n";
  if (o.frame.empty()) {
    emit(enc_json, o.encoder_out.empty() ? o.output : o.encoder_out);
    return kExitOk;
  }
  if (!o.encoder_out.empty()) write_file(o.encoder_out, enc_json);
  if (o.data.empty()) throw ValidationError("--frame needs --data");
  const Matrix x = parse_shaped(o.data, inst.field(), inst.n(), inst.t(), "data");
  const Matrix y = enc.lvs * x;
  Frame frame = make_frame(o.send_encoder ? hstack(enc.l, y) : y, o.pad, !o.send_encoder);
  const std::size_t rows = frame.matrix.rows();
  const std::size_t cols = frame.matrix.cols();
  Rng rng(o.seed);
  if (!o.error.empty()) frame.matrix = frame.matrix + parse_shaped(o.error, inst.field(), rows, cols, "error");
  if (o.error_weight) frame.matrix = frame.matrix + hamming_error(inst.field(), rows, cols, o.error_weight, rng);
  if (o.error_rank) frame.matrix = frame.matrix + rank_error(inst.field(), rows, cols, o.error_rank, rng);
  write_file(o.frame, encode_frame(frame));
  if (o.encoder_out.empty()) emit(enc_json, o.output);
  return kExitOk;
}

int cmd_decode(const Options& o) {
  const Instance inst = load_instance(o.instance);
  const Frame frame = decode_frame(read_file(o.frame), inst.field());
  std::optional<Matrix> lvs;
  if (!o.encoder.empty()) lvs = load_encoder(o.encoder, inst).lvs;
  const Metric metric = parse_metric(o.metric);
  std::optional<Matrix> x;
  if (!o.data.empty()) x = parse_shaped(o.data, inst.field(), inst.n(), inst.t(), "data");
  std::vector<std::size_t> users;
  if (o.user) {
    users.push_back(*o.user);
  } else {
    if (!x) throw ValidationError("decoding every user needs --data");
    for (std::size_t i = 0; i < inst.m(); ++i) users.push_back(i);
  }
  bool failed = false;
  json j = json::array();
  for (std::size_t i : users) {
    if (i >= inst.m()) throw ValidationError("user index out of range");
    const Matrix cache =
        x ? side_information(inst, i, *x)
          : (o.cache.empty() ? throw ValidationError("--user needs --cache or --data")
                             : parse_shaped(o.cache, inst.field(), inst.side_dim(i), inst.t(), "cache"));
    const UserDecode r = decode_user(inst, i, frame, lvs, cache, metric, o.delta);
    failed |= !r.demand;
    if (o.out == "json") {
      json u = {{"user", i}, {"failure", to_string(r.failure)}, {"saturated", r.saturated}};
      u["demand"] = r.demand ? matrix_json(*r.demand) : json(nullptr);
      j.push_back(u);
    } else if (r.demand) {
      std::cout << (o.user ? "" : "user " + std::to_string(i) + ": ") << row_text(*r.demand)
                << (r.saturated ? "  (trap saturated)" : "") << '\n';
    } else {
      std::cout << (o.user ? "" : "user " + std::to_string(i) + ": ") << "failure "
                << to_string(r.failure) << '\n';
    }
  }
  if (o.out == "json") std::cout << j.dump(2) << '\n';
  if (failed) throw DecodeFailed("decoding failed");
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  const Instance inst = load_instance(o.instance);
  const EncodingMatrix enc = obtain_encoder(inst, o);
  SimConfig cfg;
  cfg.delta = o.delta;
  cfg.pad = o.pad;
  cfg.lvs_shared = !o.send_encoder;
  cfg.require_certificate = o.guarantee;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  const auto colon = o.sim_error.find(':');
  if (colon == std::string::npos) throw ValidationError("--error must be hamming:W or rank:R");
  const std::string kind = o.sim_error.substr(0, colon);
  if (kind == "hamming")
    cfg.model = ErrorModel::Hamming;
  else if (kind == "rank")
    cfg.model = ErrorModel::Rank;
  else
    throw ValidationError("unknown error model \"" + kind + "\"");
  try {
    cfg.magnitude = std::stoul(o.sim_error.substr(colon + 1));
  } catch (const std::exception&) {
    throw ValidationError("bad error magnitude in \"" + o.sim_error + "\"");
  }
  const SimReport rep = run_simulation(inst, enc, cfg);
  emit(o.out == "json" ? report_json(rep, o.timing) + "\n" : report_csv(rep), o.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index coding with coded side information"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool needs_instance) {
    auto* opt = c->add_option("--instance", o.instance, "instance JSON file");
    if (needs_instance) opt->required()->check(CLI::ExistingFile);
    c->add_option("--seed", o.seed, "master seed");
    c->add_option("--delta", o.delta, "error-correction radius");
    c->add_option("--metric", o.metric, "hamming or rank")->check(CLI::IsMember({"hamming", "rank"}));
    c->add_option("--budget", o.budget, "enumeration budget");
    c->add_option("--output,-o", o.output, "write the report here instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "check an instance file");
  common(validate, true);
  validate->add_flag("--verbose,-v", o.verbose, "print the canonical instance");

  auto* minrank = app.add_subcommand("minrank", "kappa, alpha, witnesses and the ECIC length bracket");
  common(minrank, true);
  minrank->add_option("--out", o.out, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  auto* bounds = app.add_subcommand("bounds", "evaluate existence bounds as CSV");
  common(bounds, false);
  bounds->add_flag("--table2", o.table2, "uniform matrix and subspace bounds over F_4");
  bounds->add_flag("--table3", o.table3, "subspace bound at the largest certified m");
  bounds->add_flag("--table4", o.table4, "rank-metric ECIC existence at n=20, q=16");
  bounds->add_flag("--zippel", o.zippel, "single uniform-matrix bound query");
  bounds->add_option("--q", o.q, "field size");
  bounds->add_option("--m-prime", o.m_prime, "number of distinct side-information spaces");
  bounds->add_option("--sender-dim", o.d_s, "d_S");
  bounds->add_option("--length,-N", o.length, "code length N");
  bounds->add_option("--sig", o.sig, "significant figures")->check(CLI::Range(1, 30));
  bounds->add_option("--out", o.out, "csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  auto* encode = app.add_subcommand("encode", "build an encoder and optionally a broadcast frame");
  common(encode, true);
  encode->add_option("--method", o.method, "coset, concatenated or random")
      ->check(CLI::IsMember({"coset", "concatenated", "random"}));
  encode->add_option("--encoder", o.encoder, "reuse an encoder JSON file")->check(CLI::ExistingFile);
  encode->add_option("--encoder-out", o.encoder_out, "encoder JSON destination");
  encode->add_option("--length,-N", o.length, "length for random search (default kappa)");
  encode->add_option("--attempts", o.attempts, "random search attempts");
  encode->add_option("--data", o.data, "data X as rows 'a,b;c,d' (a single row is a column)");
  encode->add_option("--frame", o.frame, "write a broadcast frame here");
  encode->add_option("--pad", o.pad, "zero pad v of the frame");
  encode->add_flag("--send-encoder", o.send_encoder, "transmit L alongside L V_S X");
  encode->add_option("--error", o.error, "explicit error matrix added to the frame");
  encode->add_option("--error-weight", o.error_weight, "random error of this Hamming weight");
  encode->add_option("--error-rank", o.error_rank, "random error of this rank");

  auto* decode = app.add_subcommand("decode", "decode a broadcast frame");
  common(decode, true);
  decode->add_option("--frame", o.frame, "frame file")->required()->check(CLI::ExistingFile);
  decode->add_option("--encoder", o.encoder, "encoder JSON (needed when L V_S is shared)")
      ->check(CLI::ExistingFile);
  decode->add_option("--user", o.user, "zero-based receiver index");
  decode->add_option("--cache", o.cache, "V_i X for the canonical basis of X^(i)");
  decode->add_option("--data", o.data, "X, to derive every receiver's cache");
  decode->add_option("--out", o.out, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo noisy broadcasts");
  common(simulate, true);
  simulate->add_option("--method", o.method, "coset, concatenated or random")
      ->check(CLI::IsMember({"coset", "concatenated", "random"}));
  simulate->add_option("--encoder", o.encoder, "encoder JSON file")->check(CLI::ExistingFile);
  simulate->add_option("--length,-N", o.length, "length for random search (default kappa)");
  simulate->add_option("--attempts", o.attempts, "random search attempts");
  simulate->add_option("--error", o.sim_error, "hamming:W or rank:R injected magnitude");
  simulate->add_option("--pad", o.pad, "trap pad v for rank errors");
  simulate->add_flag("--send-encoder", o.send_encoder, "transmit L alongside L V_S X");
  simulate->add_flag("--guarantee", o.guarantee, "require an ECIC certificate for --delta");
  simulate->add_option("--trials", o.trials, "number of trials");
  simulate->add_flag("--timing", o.timing, "include wall time in JSON output");
  simulate->add_option("--out", o.out, "csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*minrank) return cmd_minrank(o);
    if (*bounds) return cmd_bounds(o);
    if (*encode) return cmd_encode(o);
    if (*decode) return cmd_decode(o);
    if (*simulate) return cmd_simulate(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const DecodeFailed& e) {
    std::cerr << e.what() << '\n';
    return kExitDecode;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
