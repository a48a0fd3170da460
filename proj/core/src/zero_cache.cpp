#include "xim/zero_cache.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "xim/errors.hpp"

namespace xim::zero_cache {

using nlohmann::json;

bool load(const std::string& path, xi::ZeroList& out, unsigned& precision_digits) {
  std::ifstream in(path);
  if (!in) return false;
  json j;
  try {
    in >> j;
    if (!j.is_object() || j.value("format_version", 0) != kFormatVersion) return false;
    unsigned d = j.at("precision_digits").get<unsigned>();
    xi::ZeroList zl;
    zl.scan_height = Scalar::parse(j.at("scan_height").get<std::string>(), d);
    for (const auto& z : j.at("zeros")) zl.zeros.push_back(Scalar::parse(z.get<std::string>(), d));
    for (const auto& b : j.at("brackets"))
      zl.brackets.push_back({Scalar::parse(b.at(0).get<std::string>(), d),
                             Scalar::parse(b.at(1).get<std::string>(), d)});
    for (const auto& r : j.at("residuals"))
      zl.residuals.push_back(Scalar::parse(r.get<std::string>(), d));
    if (zl.zeros.size() != zl.brackets.size() || zl.zeros.size() != zl.residuals.size())
      return false;
    zl.complete = j.value("complete", true);
    for (const auto& w : j.value("warnings", json::array()))
      zl.warnings.push_back(w.get<std::string>());
    out = std::move(zl);
    precision_digits = d;
    return true;
  } catch (const json::exception&) {
    return false;
  }
}

void save(const std::string& path, const xi::ZeroList& zl, unsigned precision_digits) {
  json j;
  j["format_version"] = kFormatVersion;
  j["precision_digits"] = precision_digits;
  j["scan_height"] = zl.scan_height.str();
  json zeros = json::array(), brackets = json::array(), residuals = json::array();
  for (const Scalar& z : zl.zeros) zeros.push_back(z.str());
  for (const xi::Bracket& b : zl.brackets)
    brackets.push_back(json::array({b.lo.str(), b.hi.str()}));
  for (const Scalar& r : zl.residuals) residuals.push_back(r.str());
  j["zeros"] = std::move(zeros);
  j["brackets"] = std::move(brackets);
  j["residuals"] = std::move(residuals);
  j["complete"] = zl.complete;
  j["warnings"] = zl.warnings;

  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::missing_file, "cannot open " + tmp + " for writing");
    out << j.dump(1) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Errc::missing_file, "cannot rename " + tmp + " to " + path);
}

}  // namespace xim::zero_cache
