#include "fedq/conventions.hpp"

#include <cstdio>

#include "fedq/error.hpp"

namespace fedq {

namespace {

int* slot(Conventions& c, std::string_view name) {
  if (name == "pert-sign") return &c.pert_sign;
  if (name == "mu-sign") return &c.mu_sign;
  if (name == "pert-half") return &c.pert_half;
  if (name == "curvature-sign") return &c.curvature_sign;
  return nullptr;
}

}  // namespace

std::vector<std::string> Conventions::names() { return {"pert-sign", "mu-sign", "pert-half", "curvature-sign"}; }

int Conventions::get(std::string_view name) const {
  Conventions copy = *this;
  int* p = slot(copy, name);
  if (!p) throw InputError("unknown convention '" + std::string(name) + "'");
  return *p;
}

void Conventions::set(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw InputError("convention must look like name=+1 or name=-1");
  std::string_view name = assignment.substr(0, eq);
  std::string_view value = assignment.substr(eq + 1);
  int* p = slot(*this, name);
  if (!p) throw InputError("unknown convention '" + std::string(name) + "'");
  if (value == "1" || value == "+1") {
    *p = 1;
  } else if (value == "-1") {
    *p = -1;
  } else {
    throw InputError("convention value must be +1 or -1, got '" + std::string(value) + "'");
  }
}

std::vector<std::string> Conventions::flipped() const {
  std::vector<std::string> out;
  for (const auto& n : names())
    if (get(n) != 1) out.push_back(n + "=-1");
  return out;
}

std::uint64_t Conventions::hash() const {
  std::string canon;
  for (const auto& n : names()) canon += n + "=" + (get(n) > 0 ? "+1" : "-1") + ";";
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Conventions::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

}  // namespace fedq
