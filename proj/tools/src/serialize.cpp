#include "qfe/cli/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qfe::cli {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, std::string_view kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ParseError("top-level value must be an object");
  if (j.value("kind", std::string()) != kind) {
    throw ParseError("expected a '" + std::string(kind) + "' record");
  }
  if (j.value("version", -1) != kFormatVersion) {
    throw ParseError("unsupported format version");
  }
  return j;
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + name + "' has the wrong type");
  }
}

void write_state(std::ostream& os, const PureState& psi) {
  os << '[' << format_double(psi.amp0().real()) << ", " << format_double(psi.amp0().imag())
     << ", " << format_double(psi.amp1().real()) << ", " << format_double(psi.amp1().imag())
     << ']';
}

PureState read_state(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("qubit must be [re0, im0, re1, im1]");
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number()) throw ParseError("amplitude must be a number");
    v[i] = j[i].get<double>();
  }
  return PureState({v[0], v[1]}, {v[2], v[3]});
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string serialize(const MasterSecret& msk) {
  std::ostringstream os;
  os << "{\n"
     << "  \"version\": " << kFormatVersion << ",\n"
     << "  \"kind\": \"master-secret\",\n"
     << "  \"lambda\": " << msk.params().lambda() << ",\n"
     << "  \"Q\": " << msk.message_length() << ",\n"
     << "  \"s\": \"" << to_hex(msk.secret()) << "\",\n"
     << "  \"designated_keys\": [";
  for (std::size_t i = 0; i < msk.designated_keys().size(); ++i) {
    os << (i ? ", " : "") << '"' << to_hex(msk.designated_keys()[i]) << '"';
  }
  os << "],\n  \"eta\": [";
  const auto eta = msk.eta().one_based();
  for (std::size_t i = 0; i < eta.size(); ++i) os << (i ? ", " : "") << eta[i];
  os << "]\n}\n";
  return os.str();
}

std::string serialize(const FunctionKey& fk, std::size_t message_length) {
  std::ostringstream os;
  os << "{\n"
     << "  \"version\": " << kFormatVersion << ",\n"
     << "  \"kind\": \"function-key\",\n"
     << "  \"Q\": " << message_length << ",\n"
     << "  \"bottom\": " << (fk.is_bottom() ? "true" : "false") << ",\n"
     << "  \"prefix\": \"" << (fk.is_bottom() ? std::string() : to_string(fk.bits())) << "\"\n"
     << "}\n";
  return os.str();
}

std::string serialize(const HfeCiphertext& ct) {
  const std::size_t q = ct.message_length();
  std::ostringstream os;
  os << "{\n"
     << "  \"version\": " << kFormatVersion << ",\n"
     << "  \"kind\": \"ciphertext\",\n"
     << "  \"Q\": " << q << ",\n"
     << "  \"blocks\": [\n";
  for (std::size_t j = 1; j <= q; ++j) {
    const XiCiphertext& b = ct.block(j);
    os << "    {\"j\": " << j << ", \"theta\": " << format_double(block_angle(j, q))
       << ", \"c0\": ";
    write_state(os, b.c0());
    os << ", \"c1\": ";
    write_state(os, b.c1());
    os << '}' << (j < q ? "," : "") << '\n';
  }
  os << "  ]\n}\n";
  return os.str();
}

MasterSecret parse_master_secret(std::string_view text) {
  const json j = parse_json(text, "master-secret");
  try {
    const SchemeParams params(field<std::size_t>(j, "lambda"), field<std::size_t>(j, "Q"));
    BitString s = parse_hex(field<std::string>(j, "s"), params.message_length());
    std::vector<BitString> keys;
    for (const auto& k : field<std::vector<std::string>>(j, "designated_keys")) {
      keys.push_back(parse_hex(k, params.lambda()));
    }
    auto eta = Permutation::from_one_based(field<std::vector<std::size_t>>(j, "eta"));
    return MasterSecret(params, std::move(s), std::move(keys), std::move(eta));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid master secret: ") + e.what());
  }
}

std::pair<FunctionKey, std::size_t> parse_function_key(std::string_view text) {
  const json j = parse_json(text, "function-key");
  const auto q = field<std::size_t>(j, "Q");
  const bool bottom = field<bool>(j, "bottom");
  const auto prefix = field<std::string>(j, "prefix");
  if (bottom) {
    if (!prefix.empty()) throw ParseError("bottom key must have an empty prefix");
    return {FunctionKey::bottom(), q};
  }
  try {
    BitString bits = parse_bits(prefix);
    if (bits.empty() || bits.size() > q) throw ParseError("prefix length outside [1, Q]");
    return {FunctionKey::prefix(std::move(bits)), q};
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid function key: ") + e.what());
  }
}

HfeCiphertext parse_ciphertext(std::string_view text) {
  const json j = parse_json(text, "ciphertext");
  const auto q = field<std::size_t>(j, "Q");
  const auto blocks = field<json>(j, "blocks");
  if (!blocks.is_array() || blocks.size() != q || q == 0) {
    throw ParseError("block count does not match Q");
  }
  std::vector<XiCiphertext> out;
  out.reserve(q);
  try {
    for (std::size_t idx = 0; idx < q; ++idx) {
      const json& b = blocks[idx];
      if (field<std::size_t>(b, "j") != idx + 1) throw ParseError("blocks out of order");
      if (field<double>(b, "theta") != block_angle(idx + 1, q)) {
        throw ParseError("block angle does not match 2 pi j / Q");
      }
      out.emplace_back(read_state(field<json>(b, "c0")), read_state(field<json>(b, "c1")));
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid ciphertext: ") + e.what());
  }
  return HfeCiphertext(std::move(out));
}

}  // namespace qfe::cli
