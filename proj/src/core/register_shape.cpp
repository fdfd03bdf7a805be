#include "qadapt/core/register_shape.hpp"

#include <algorithm>
#include <set>

#include "qadapt/core/error.hpp"

namespace qadapt::core {

RegisterShape::RegisterShape(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  std::set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.dim == 0) throw InputError("subsystem '" + s.label + "' has dimension 0");
    if (!seen.insert(s.label).second) {
      throw InputError("duplicate subsystem label '" + s.label + "'");
    }
  }
}

RegisterShape RegisterShape::single(std::string label, std::size_t dim) {
  return RegisterShape({{std::move(label), dim}});
}

std::size_t RegisterShape::total_dim() const {
  std::size_t d = 1;
  for (const auto& s : subsystems_) d *= s.dim;
  return d;
}

bool RegisterShape::contains(const std::string& label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t RegisterShape::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label == label) return i;
  }
  throw InputError("unknown subsystem label '" + label + "'");
}

std::size_t RegisterShape::dim_of(const std::string& label) const {
  return subsystems_[index_of(label)].dim;
}

std::vector<std::string> RegisterShape::labels() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

RegisterShape RegisterShape::restricted(const std::vector<std::string>& keep) const {
  for (const auto& l : keep) index_of(l);
  std::vector<Subsystem> out;
  for (const auto& s : subsystems_) {
    if (std::find(keep.begin(), keep.end(), s.label) != keep.end()) out.push_back(s);
  }
  return RegisterShape(std::move(out));
}

std::vector<std::string> RegisterShape::complement(const std::vector<std::string>& labels) const {
  for (const auto& l : labels) index_of(l);
  std::vector<std::string> out;
  for (const auto& s : subsystems_) {
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) out.push_back(s.label);
  }
  return out;
}

RegisterShape RegisterShape::concat(const RegisterShape& other) const {
  auto all = subsystems_;
  all.insert(all.end(), other.subsystems_.begin(), other.subsystems_.end());
  return RegisterShape(std::move(all));
}

}  // namespace qadapt::core
