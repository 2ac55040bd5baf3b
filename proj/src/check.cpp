#include "gdstar/check.hpp"

#include <algorithm>
#include <cmath>

namespace gdstar {

Tracked tracked_pow(const Tracked& a, Index p) {
  Tracked r = Tracked::identity(a.m.rows());
  for (Index i = 0; i < p; ++i) r = r * a;
  return r;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Recorded: return "recorded";
  }
  return "fail";
}

bool tracked_eq(const Tracked& lhs, const Tracked& rhs, const Tolerance& tol) {
  require_same_shape(lhs.m, rhs.m, "tracked_eq");
  return (lhs.m - rhs.m).norm() <= tol.residual_atol + tol.residual_rtol * (lhs.bound + rhs.bound);
}

bool CheckReport::overall() const {
  if (inconsistency) return false;
  return std::none_of(items.begin(), items.end(),
                      [](const CheckItem& it) { return it.status == Status::Fail; });
}

const CheckItem& CheckReport::check(std::string name, const Tracked& lhs, const Tracked& rhs,
                                    const Tolerance& tol) {
  require_same_shape(lhs.m, rhs.m, name);
  CheckItem it;
  it.name = std::move(name);
  it.residual = (lhs.m - rhs.m).norm();
  it.scale = lhs.bound + rhs.bound;
  const bool ok = std::isfinite(it.residual) &&
                  it.residual <= tol.residual_atol + tol.residual_rtol * it.scale;
  it.status = ok ? Status::Pass : Status::Fail;
  items.push_back(std::move(it));
  return items.back();
}

const CheckItem& CheckReport::check_zero(std::string name, const Tracked& lhs, const Tolerance& tol) {
  return check(std::move(name), lhs, Tracked::zero(lhs.m.rows(), lhs.m.cols()), tol);
}

const CheckItem& CheckReport::check_flag(std::string name, bool ok, double residual, double scale,
                                         std::string note) {
  items.push_back({std::move(name), residual, scale, ok ? Status::Pass : Status::Fail, std::move(note)});
  return items.back();
}

const CheckItem& CheckReport::record(std::string name, const Tracked& lhs, const Tracked& rhs,
                                     std::string note) {
  require_same_shape(lhs.m, rhs.m, name);
  return record_value(std::move(name), (lhs.m - rhs.m).norm(), lhs.bound + rhs.bound, std::move(note));
}

const CheckItem& CheckReport::record_value(std::string name, double residual, double scale,
                                           std::string note) {
  items.push_back({std::move(name), residual, scale, Status::Recorded, std::move(note)});
  return items.back();
}

bool CheckReport::hypothesis(std::string name, const Tracked& lhs, const Tracked& rhs, const Tolerance& tol) {
  const bool ok = tracked_eq(lhs, rhs, tol);
  record(std::move(name), lhs, rhs, ok ? "holds" : "violated");
  return ok;
}

void CheckReport::skip(std::string name, std::string note) {
  items.push_back({std::move(name), 0.0, 0.0, Status::Skipped, std::move(note)});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const auto& it : other.items) {
    CheckItem copy = it;
    copy.name = prefix + copy.name;
    items.push_back(std::move(copy));
  }
  inconsistency = inconsistency || other.inconsistency;
  for (const auto& f : other.findings) findings.push_back(prefix + f);
}

const CheckItem* CheckReport::find(std::string_view name) const {
  for (const auto& it : items) {
    if (it.name == name) return &it;
  }
  return nullptr;
}

bool CheckReport::passed(std::string_view name) const {
  const CheckItem* it = find(name);
  return it != nullptr && it->status == Status::Pass;
}

std::size_t CheckReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [s](const CheckItem& it) { return it.status == s; }));
}

double CheckReport::worst_relative() const {
  double worst = 0.0;
  for (const auto& it : items) {
    if (it.status == Status::Pass || it.status == Status::Fail) worst = std::max(worst, it.relative());
  }
  return worst;
}

}  // namespace gdstar
