#include "flagrank/algebra/chart.hpp"

#include <cctype>
#include <set>

#include "flagrank/errors.hpp"

namespace flagrank {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return true;
}

Chart::Chart(std::string name, std::vector<std::string> variables)
    : name_(std::move(name)), variables_(std::move(variables)) {
  if (variables_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "chart '" + name_ + "' has no variables");
  }
  std::set<std::string> seen;
  for (const auto& v : variables_) {
    if (!is_identifier(v)) {
      throw Error(ErrorKind::InvalidArgument, "invalid variable name '" + v + "'");
    }
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::InvalidArgument,
                  "duplicate variable '" + v + "' in chart '" + name_ + "'");
    }
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == var) return i;
  }
  return std::nullopt;
}

std::size_t Chart::require_index(std::string_view var) const {
  auto idx = index_of(var);
  if (!idx) {
    throw Error(ErrorKind::UnknownVariable,
                "variable '" + std::string(var) + "' is not in chart '" + name_ + "'");
  }
  return *idx;
}

ChartPtr make_chart(std::string name, std::vector<std::string> variables) {
  return std::make_shared<const Chart>(std::move(name), std::move(variables));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) {
    throw Error(ErrorKind::ChartMismatch,
                "chart mismatch: '" + (a ? a->name() : std::string("?")) + "' vs '" +
                    (b ? b->name() : std::string("?")) + "'");
  }
}

ChartPtr extend_chart(const ChartPtr& base, const std::vector<std::string>& extra,
                      std::string name) {
  auto vars = base->variables();
  vars.insert(vars.end(), extra.begin(), extra.end());
  if (name.empty()) name = base->name() + "_ext";
  return make_chart(std::move(name), std::move(vars));
}

}  // namespace flagrank
