#include <sstream>

#include "flagrank/dsl/dsl.hpp"

namespace flagrank::dsl {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

}  // namespace

std::string print(const Model& m) {
  std::ostringstream os;
  if (m.chart) os << "chart " << m.chart->name() << "(" << join(m.chart->variables()) << ")\n";
  for (const auto& f : m.fields) os << "field " << f.name << " = " << f.value.to_string() << "\n";
  for (const auto& f : m.forms) os << "form " << f.name << " = " << f.value.to_string() << "\n";
  for (const auto& d : m.dists) {
    os << "dist " << d.name << " = " << (d.kind == DistKind::Ann ? "ann" : "span") << "("
       << join(d.members) << ")\n";
  }
  for (const auto& p : m.points) os << "point " << p.name << " = " << p.value.to_string() << "\n";
  for (const auto& t : m.tasks) {
    os << "task " << t.name;
    if (!t.args.empty()) {
      std::vector<std::string> args;
      for (const auto& a : t.args) args.push_back(a.key.empty() ? a.value : a.key + "=" + a.value);
      os << "(" << join(args) << ")";
    }
    os << "\n";
  }
  return os.str();
}

bool structurally_equal(const Model& a, const Model& b) {
  if (static_cast<bool>(a.chart) != static_cast<bool>(b.chart)) return false;
  if (a.chart && !(*a.chart == *b.chart)) return false;
  auto same_names = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].name != y[i].name) return false;
    }
    return true;
  };
  if (!same_names(a.fields, b.fields) || !same_names(a.forms, b.forms) ||
      !same_names(a.dists, b.dists) || !same_names(a.points, b.points)) {
    return false;
  }
  // Coefficients are compared as canonical strings: structural equality of
  // RatFunc also requires the same chart object.
  for (std::size_t i = 0; i < a.fields.size(); ++i) {
    if (a.fields[i].value.to_string() != b.fields[i].value.to_string()) return false;
  }
  for (std::size_t i = 0; i < a.forms.size(); ++i) {
    if (a.forms[i].value.to_string() != b.forms[i].value.to_string()) return false;
  }
  for (std::size_t i = 0; i < a.dists.size(); ++i) {
    const auto& x = a.dists[i];
    const auto& y = b.dists[i];
    if (x.kind != y.kind || x.members != y.members || x.dist.rank() != y.dist.rank()) return false;
    for (std::size_t k = 0; k < x.dist.rank(); ++k) {
      if (x.dist.frame()[k].to_string() != y.dist.frame()[k].to_string()) return false;
    }
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].value.coords != b.points[i].value.coords) return false;
  }
  if (a.tasks.size() != b.tasks.size()) return false;
  for (std::size_t i = 0; i < a.tasks.size(); ++i) {
    if (a.tasks[i].name != b.tasks[i].name || a.tasks[i].args != b.tasks[i].args) return false;
  }
  return true;
}

}  // namespace flagrank::dsl
