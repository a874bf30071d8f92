#include "plancherel/sequences.hpp"

#include "plancherel/errors.hpp"

#include <cmath>
#include <set>

namespace plancherel {

SequenceRule SequenceRule::identity() { return SequenceRule(); }

SequenceRule SequenceRule::arithmetic(std::int64_t q, std::int64_t r) {
  if (q < 1 || q + r < 1) throw InvalidArgument("arithmetic rule needs q >= 1 and q + r >= 1");
  SequenceRule s;
  s.kind_ = SequenceKind::arithmetic;
  s.q_ = q;
  s.r_ = r;
  return s;
}

SequenceRule SequenceRule::block_swap() {
  SequenceRule s;
  s.kind_ = SequenceKind::block_swap;
  return s;
}

SequenceRule SequenceRule::explicit_list(std::vector<std::int64_t> values) {
  std::set<std::int64_t> seen;
  for (auto v : values) {
    if (v < 1) throw InvalidArgument("explicit sequence values must be positive");
    if (!seen.insert(v).second) throw InvalidArgument("explicit sequence values must be distinct");
  }
  SequenceRule s;
  s.kind_ = SequenceKind::explicit_list;
  s.values_ = std::move(values);
  return s;
}

std::int64_t SequenceRule::term(std::int64_t n, std::int64_t L) const {
  if (n < 1) throw InvalidArgument("sequence terms are indexed from 1");
  switch (kind_) {
    case SequenceKind::identity:
      return n;
    case SequenceKind::arithmetic:
      return q_ * n + r_;
    case SequenceKind::block_swap:
      if (n <= L) return n + L;
      if (n <= 2 * L) return n - L;
      return n;
    case SequenceKind::explicit_list:
      if (n > static_cast<std::int64_t>(values_.size())) {
        throw InvalidArgument("explicit sequence has only " + std::to_string(values_.size()) +
                              " terms");
      }
      return values_[static_cast<std::size_t>(n - 1)];
  }
  return n;
}

std::vector<std::int64_t> SequenceRule::prefix(std::int64_t m, std::int64_t L) const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(m, 0)));
  for (std::int64_t n = 1; n <= m; ++n) out.push_back(term(n, L));
  return out;
}

bool SequenceRule::increasing() const noexcept {
  switch (kind_) {
    case SequenceKind::identity:
    case SequenceKind::arithmetic:
      return true;
    case SequenceKind::block_swap:
      return false;
    case SequenceKind::explicit_list:
      for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        if (values_[i] >= values_[i + 1]) return false;
      }
      return true;
  }
  return false;
}

std::optional<std::vector<DensitySegment>> SequenceRule::limit_segments(double x) const {
  switch (kind_) {
    case SequenceKind::identity:
      return std::vector<DensitySegment>{{0.0, x, 1, 0}};
    case SequenceKind::arithmetic: {
      const std::int64_t res = ((r_ % q_) + q_) % q_;
      return std::vector<DensitySegment>{{0.0, static_cast<double>(q_) * x, q_, res}};
    }
    case SequenceKind::block_swap:
      if (x <= 1) return std::vector<DensitySegment>{{1.0, 1.0 + x, 1, 0}};
      if (x <= 2) return std::vector<DensitySegment>{{0.0, x - 1.0, 1, 0}, {1.0, 2.0, 1, 0}};
      return std::vector<DensitySegment>{{0.0, x, 1, 0}};
    case SequenceKind::explicit_list:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string SequenceRule::name() const {
  switch (kind_) {
    case SequenceKind::identity:
      return "identity";
    case SequenceKind::arithmetic:
      return "arithmetic(" + std::to_string(q_) + "n" + (r_ >= 0 ? "+" : "") +
             std::to_string(r_) + ")";
    case SequenceKind::block_swap:
      return "block_swap";
    case SequenceKind::explicit_list:
      return "explicit[" + std::to_string(values_.size()) + "]";
  }
  return "?";
}

nlohmann::json SequenceRule::to_json() const {
  switch (kind_) {
    case SequenceKind::identity:
      return {{"kind", "identity"}};
    case SequenceKind::arithmetic:
      return {{"kind", "arithmetic"}, {"q", q_}, {"r", r_}};
    case SequenceKind::block_swap:
      return {{"kind", "block_swap"}};
    case SequenceKind::explicit_list:
      return {{"kind", "explicit"}, {"values", values_}};
  }
  return {};
}

SequenceRule SequenceRule::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InvalidArgument("sequence rule must be an object with a \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  auto only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
      bool ok = key == "kind";
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw InvalidArgument("unknown key '" + key + "' in " + kind + " sequence rule");
    }
  };
  if (kind == "identity") {
    only({});
    return identity();
  }
  if (kind == "arithmetic") {
    only({"q", "r"});
    return arithmetic(j.at("q").get<std::int64_t>(), j.value("r", std::int64_t{0}));
  }
  if (kind == "block_swap") {
    only({});
    return block_swap();
  }
  if (kind == "explicit") {
    only({"values"});
    return explicit_list(j.at("values").get<std::vector<std::int64_t>>());
  }
  throw InvalidArgument("unknown sequence kind '" + kind + "'");
}

std::int64_t scaled_level(double y, std::int64_t L) {
  // tolerate decimal representation error such as 0.29 * 100 = 28.999999999999996
  const double v = y * static_cast<double>(L);
  return static_cast<std::int64_t>(std::floor(v + 1e-9));
}

}  // namespace plancherel
