#include "blspec/report.hpp"

#include <array>
#include <cstdio>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace blspec {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSig = 20;

Json value_json(const std::optional<QuadraticSurd>& exact, const Enclosure& e) {
  Json j;
  if (exact) j["exact"] = exact->to_string();
  j["lo"] = to_decimal_sig(e.lo, kSig, Rounding::down);
  j["hi"] = to_decimal_sig(e.hi, kSig, Rounding::up);
  return j;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

std::string version() { return BLSPEC_VERSION_STRING; }

std::string spectrum_to_json(const SpectrumEstimate& est) {
  Json j;
  j["system"] = to_string(est.system);
  if (est.windows.empty()) {
    j["n_range"] = nullptr;
  } else {
    j["n_range"] = {est.n_range.first, est.n_range.second};
  }
  j["windows"] = Json::array();
  for (const auto& w : est.windows) {
    j["windows"].push_back({{"lo", w.lo}, {"hi", w.hi}, {"sup", value_json(w.exact_sup, w.sup)},
                            {"inf", value_json(w.exact_inf, w.inf)}});
  }
  auto limit = [&](const std::optional<QuadraticSurd>& exact, const Enclosure& estimate) {
    Json v;
    if (exact) v["exact"] = exact->to_string();
    if (!est.windows.empty()) {
      v["lo"] = to_decimal_sig(estimate.lo, kSig, Rounding::down);
      v["hi"] = to_decimal_sig(estimate.hi, kSig, Rounding::up);
    } else if (exact) {
      const Enclosure e = exact->enclose();
      v["lo"] = to_decimal_sig(e.lo, kSig, Rounding::down);
      v["hi"] = to_decimal_sig(e.hi, kSig, Rounding::up);
    }
    return v;
  };
  if (est.exact && est.exact->B.is_infinite()) {
    j["B"] = Json{{"exact", "inf"}};
  } else {
    j["B"] = limit(est.exact ? est.exact->B.value : std::nullopt, est.B_est);
  }
  j["Bprime"] = limit(est.exact ? std::optional(est.exact->Bprime) : std::nullopt, est.Bprime_est);
  if (est.complexity_floor) {
    j["complexity_floor"] = est.complexity_floor->get_str();
  } else {
    j["complexity_floor"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string scan_to_json(std::string_view family, std::size_t max_period, Quotient max_digit,
                         const std::vector<QuadraticSurd>& values) {
  Json j;
  j["family"] = family;
  j["max_period"] = max_period;
  j["max_digit"] = max_digit;
  j["values"] = Json::array();
  for (const auto& v : values) {
    j["values"].push_back({{"exact", v.to_string()}, {"decimal", to_decimal(v.enclose().mid(), 12)}});
  }
  return j.dump(2) + "\n";
}

std::string plotdata_from_csv(std::string_view csv) {
  auto lines = split(csv, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) return "";
  struct Row {
    std::string n;
    BigRational mid, width;
    bool exact;
  };
  std::vector<Row> rows;
  bool any_inexact = false;
  std::size_t offset = lines.front().size() + 1;
  if (split(lines.front(), ',').size() != 7 || lines.front().substr(0, 2) != "n,") {
    throw ParseError("expected the e_n CSV header", 0);
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto cols = split(line, ',');
    if (cols.size() != 7) throw ParseError("line " + std::to_string(i + 1) + ": expected 7 columns", offset);
    if (cols[0].empty() || cols[0].find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("line " + std::to_string(i + 1) + ": bad n", offset);
    }
    BigRational lo, hi;
    try {
      parse_decimal(cols[2]);
      parse_decimal(cols[3]);
      lo = parse_decimal(cols[4]);
      hi = parse_decimal(cols[5]);
      if (cols[6].empty() || cols[6].find_first_not_of("0123456789") != std::string_view::npos) {
        throw Error("bad cylinder_count");
      }
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(i + 1) + ": " + e.what(), offset);
    }
    if (lo > hi) throw ParseError("line " + std::to_string(i + 1) + ": inverted enclosure", offset);
    const bool exact = !cols[1].empty();
    any_inexact = any_inexact || !exact;
    rows.push_back({std::string(cols[0]), (lo + hi) / 2, hi - lo, exact});
    offset += lines[i].size() + 1;
  }
  std::string out;
  for (const auto& r : rows) {
    out += r.n + " " + to_decimal_sig(r.mid, 17);
    if (any_inexact) out += " " + to_decimal_sig(r.width, 6, Rounding::up);
    out += "\n";
  }
  return out;
}

std::string manifest_to_json(const RunManifest& m) {
  Json j;
  j["command_line"] = m.command_line;
  j["system"] = m.system;
  j["budgets"] = {{"n_max", m.n_max}, {"level_cap", m.level_cap}, {"rel_tol", m.rel_tol}};
  j["version"] = m.version;
  j["output_sha256"] = m.output_digest;
  return j.dump(2) + "\n";
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    std::array<char, 3> buf{};
    std::snprintf(buf.data(), buf.size(), "%02x", md[i]);
    hex += buf.data();
  }
  return hex;
}

}  // namespace blspec
