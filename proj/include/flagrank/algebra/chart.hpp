#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flagrank {

/// A named coordinate system. Variable order is significant: it fixes the
/// monomial order and the coordinate-direction order of every field on it.
class Chart {
 public:
  Chart(std::string name, std::vector<std::string> variables);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t dimension() const noexcept { return variables_.size(); }
  const std::string& variable(std::size_t i) const { return variables_.at(i); }
  std::optional<std::size_t> index_of(std::string_view var) const;

  /// Index of `var`, or Error(UnknownVariable).
  std::size_t require_index(std::string_view var) const;

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.name_ == b.name_ && a.variables_ == b.variables_;
  }

 private:
  std::string name_;
  std::vector<std::string> variables_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> variables);

bool same_chart(const ChartPtr& a, const ChartPtr& b);

/// Throws Error(ChartMismatch) unless the charts coincide.
void require_same_chart(const ChartPtr& a, const ChartPtr& b);

/// `base` with `extra` appended; the name gets a `_ext` suffix unless given.
ChartPtr extend_chart(const ChartPtr& base, const std::vector<std::string>& extra,
                      std::string name = {});

bool is_identifier(std::string_view s);

}  // namespace flagrank
