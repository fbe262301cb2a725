#include "hurwitz/verdict.hpp"

#include <sstream>
#include <stdexcept>

namespace hurwitz {

namespace {

struct KindName {
  CertKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {CertKind::T1Bad, "T1-bad"},
    {CertKind::T0Divisibility, "T0-divisibility"},
    {CertKind::T0ChainRule, "T0-chain-rule"},
    {CertKind::T2Divisibility, "T2-divisibility"},
    {CertKind::T2Decomposition, "T2-decomposition"},
    {CertKind::T3Decomposition, "T3-decomposition"},
    {CertKind::Recursive, "Recursive"},
    {CertKind::OracleExhausted, "oracle-exhausted"},
};

}  // namespace

std::string to_string(CertKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

CertKind cert_kind_from_string(const std::string& name) {
  for (const auto& k : kKindNames) {
    if (name == k.name) return k.kind;
  }
  throw std::invalid_argument("unknown certificate kind: " + name);
}

Verdict Verdict::non_realizable(Certificate c) {
  Verdict v;
  v.status = Status::NonRealizable;
  v.certificate = std::move(c);
  return v;
}

Verdict Verdict::realizable(Constellation c) {
  Verdict v;
  v.status = Status::Realizable;
  v.witness = std::move(c);
  return v;
}

Verdict Verdict::unknown(std::vector<std::string> notes) {
  Verdict v;
  v.status = Status::Unknown;
  v.notes = std::move(notes);
  return v;
}

std::string to_string(Verdict::Status status) {
  switch (status) {
    case Verdict::Status::NonRealizable:
      return "NonRealizable";
    case Verdict::Status::Realizable:
      return "Realizable";
    case Verdict::Status::Unknown:
      return "Unknown";
  }
  return "?";
}

nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json j;
  j["kind"] = to_string(c.kind);
  nlohmann::json asg = nlohmann::json::array();
  for (const auto& [index, nu] : c.assignment.entries()) asg.push_back({index + 1, nu});
  j["assignment"] = asg;

  nlohmann::json facts = nlohmann::json::object();
  if (c.kind != CertKind::OracleExhausted) facts["pullback"] = c.pullback.to_string();
  switch (c.kind) {
    case CertKind::T0Divisibility:
    case CertKind::T2Divisibility:
      facts["modulus"] = c.modulus;
      facts["value"] = c.value;
      break;
    case CertKind::T0ChainRule:
      facts["theta_degree"] = c.modulus;
      facts["deg_q"] = c.value;
      facts["entry"] = c.entry;
      facts["partition"] = c.entry_index + 1;
      break;
    case CertKind::T2Decomposition:
    case CertKind::T3Decomposition:
    case CertKind::Recursive:
      facts["deg_w"] = c.deg_w;
      facts["deg_t"] = c.deg_t;
      facts["reason"] = c.reason;
      {
        nlohmann::json lf = nlohmann::json::array();
        for (const auto& w : c.left_factors) lf.push_back(format_datum(w));
        facts["left_factors"] = lf;
      }
      break;
    default:
      break;
  }
  j["facts"] = facts;
  if (!c.residuals.empty()) {
    if (c.residuals.size() == 1) j["residual"] = format_datum(c.residuals.front().datum);
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : c.residuals) {
      rs.push_back({{"datum", format_datum(r.datum)}, {"certificate", certificate_to_json(r.certificate)}});
    }
    j["residuals"] = rs;
  }
  return j;
}

namespace {

OrbifoldSignature parse_signature(const std::string& text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("malformed signature: " + text);
  }
  std::vector<int> values;
  std::stringstream in(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) values.push_back(std::stoi(item));
  }
  return OrbifoldSignature(std::move(values));
}

}  // namespace

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.kind = cert_kind_from_string(j.at("kind").get<std::string>());
  std::vector<std::pair<int, int>> entries;
  for (const auto& e : j.at("assignment")) {
    const int index = e.at(0).get<int>();
    if (index < 1) throw std::invalid_argument("assignment indices are 1-based");
    entries.emplace_back(index - 1, e.at(1).get<int>());
  }
  c.assignment = OrbifoldAssignment(std::move(entries));
  const auto& facts = j.at("facts");
  if (facts.contains("pullback")) c.pullback = parse_signature(facts["pullback"].get<std::string>());
  switch (c.kind) {
    case CertKind::T0Divisibility:
    case CertKind::T2Divisibility:
      c.modulus = facts.at("modulus").get<std::int64_t>();
      c.value = facts.at("value").get<std::int64_t>();
      break;
    case CertKind::T0ChainRule:
      c.modulus = facts.at("theta_degree").get<std::int64_t>();
      c.value = facts.at("deg_q").get<std::int64_t>();
      c.entry = facts.at("entry").get<int>();
      c.entry_index = facts.at("partition").get<int>() - 1;
      break;
    case CertKind::T2Decomposition:
    case CertKind::T3Decomposition:
    case CertKind::Recursive:
      c.deg_w = facts.at("deg_w").get<int>();
      c.deg_t = facts.at("deg_t").get<int>();
      c.reason = facts.at("reason").get<std::string>();
      for (const auto& w : facts.at("left_factors")) c.left_factors.push_back(parse_datum(w.get<std::string>()));
      break;
    default:
      break;
  }
  if (j.contains("residuals")) {
    for (const auto& r : j["residuals"]) {
      c.residuals.push_back(
          Residual{parse_datum(r.at("datum").get<std::string>()), certificate_from_json(r.at("certificate"))});
    }
  }
  return c;
}

std::string describe(const Certificate& c, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::ostringstream out;
  out << pad << to_string(c.kind);
  if (c.kind == CertKind::OracleExhausted) {
    out << ": exhaustive constellation search found no witness\n";
    return out.str();
  }
  out << " with assignment " << c.assignment.to_string() << ", orbifold " << c.assignment.signature().to_string()
      << ", pullback " << c.pullback.to_string() << "\n";
  switch (c.kind) {
    case CertKind::T1Bad:
      out << pad << "  pullback orbifold is bad\n";
      break;
    case CertKind::T0Divisibility:
    case CertKind::T2Divisibility:
      out << pad << "  " << c.value << " is not divisible by " << c.modulus << "\n";
      break;
    case CertKind::T0ChainRule:
      out << pad << "  inner factor has degree " << c.value << " but entry " << c.entry << " of partition "
          << c.entry_index + 1 << " forces a larger local degree\n";
      break;
    default:
      if (c.deg_w != 0) out << pad << "  deg w = " << c.deg_w << ", deg t = " << c.deg_t << "\n";
      if (!c.reason.empty()) out << pad << "  " << c.reason << "\n";
      for (const auto& w : c.left_factors) out << pad << "  left factor " << format_datum(w) << "\n";
      for (const auto& r : c.residuals) {
        out << pad << "  residual " << format_datum(r.datum) << ":\n" << describe(r.certificate, indent + 4);
      }
      break;
  }
  return out.str();
}

}  // namespace hurwitz
