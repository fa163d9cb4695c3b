#pragma once

// Complex subplanes used by the eigenvalue estimates: sectors around the
// positive/negative real axis, sectors hugging the imaginary axis, quadrants,
// half-planes, axis rays, and the sector swept by a dilation.

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cscale/angle.hpp"
#include "cscale/error.hpp"

namespace cscale {

/// Distance from z to the ray e^{i beta}[0, inf).
inline double distance_to_ray(cplx z, double beta) {
  const cplx w = z * std::polar(1.0, -beta);
  return w.real() >= 0.0 ? std::abs(w.imag()) : std::abs(w);
}

class Region {
 public:
  enum class Kind {
    All,
    SectorC,             // |Im z| < sign * kappa * Re z
    SectorU,             // pi/2 < arg z < pi/2 + 2 atan kappa, mirrored for sign -1
    QuadrantI,
    QuadrantII,
    QuadrantIII,
    QuadrantIV,
    UpperHalf,
    LowerHalf,
    LeftHalfClosed,      // Re z <= 0
    RightHalfOpen,       // Re z > 0
    UpperImaginaryAxis,  // Re z = 0, Im z > 0, within eps band
    ResonanceSector,     // -2 phi < arg z < 0
    NegativeReals,       // within eps band
    NonNegativeReals,    // within eps band
    ArgSector,           // lo < arg z < hi on the universal cover
    Complement,
    Union,
  };

  static Region all() { return Region(Kind::All); }
  static Region sector_c(int sign, double kappa) {
    check_kappa(kappa);
    Region r(Kind::SectorC);
    r.sign_ = sign >= 0 ? 1 : -1;
    r.kappa_ = kappa;
    return r;
  }
  static Region sector_u(int sign, double kappa) {
    check_kappa(kappa);
    Region r(Kind::SectorU);
    r.sign_ = sign >= 0 ? 1 : -1;
    r.kappa_ = kappa;
    return r;
  }
  static Region quadrant(int which) {
    switch (which) {
      case 1: return Region(Kind::QuadrantI);
      case 2: return Region(Kind::QuadrantII);
      case 3: return Region(Kind::QuadrantIII);
      case 4: return Region(Kind::QuadrantIV);
      default: fail(ErrorKind::InvalidArgument, "quadrant must be 1..4");
    }
  }
  static Region upper_half() { return Region(Kind::UpperHalf); }
  static Region lower_half() { return Region(Kind::LowerHalf); }
  static Region left_half_closed() { return Region(Kind::LeftHalfClosed); }
  static Region right_half_open() { return Region(Kind::RightHalfOpen); }
  static Region upper_imaginary_axis() { return Region(Kind::UpperImaginaryAxis); }
  static Region negative_reals() { return Region(Kind::NegativeReals); }
  static Region non_negative_reals() { return Region(Kind::NonNegativeReals); }
  static Region resonance_sector(double phi) {
    Region r(Kind::ResonanceSector);
    r.phi_ = phi;
    return r;
  }
  static Region arg_sector(double lo, double hi) {
    if (!(hi > lo)) fail(ErrorKind::InvalidArgument, "arg sector needs lo < hi");
    if (hi - lo > 2.0 * pi) fail(ErrorKind::InvalidArgument, "arg sector wider than 2 pi");
    Region r(Kind::ArgSector);
    const double shift = 2.0 * pi * std::floor((lo + pi) / (2.0 * pi));
    r.lo_ = lo - shift;
    r.hi_ = hi - shift;
    return r;
  }
  static Region complement(Region inner) {
    Region r(Kind::Complement);
    r.children_.push_back(std::move(inner));
    return r;
  }
  static Region union_of(Region a, Region b) {
    Region r(Kind::Union);
    r.children_.push_back(std::move(a));
    r.children_.push_back(std::move(b));
    return r;
  }

  Kind kind() const noexcept { return kind_; }
  int sign() const noexcept { return sign_; }
  double kappa() const noexcept { return kappa_; }
  double phi() const noexcept { return phi_; }

  /// Half-width of the tolerance band for the axis variants.
  static double eps_axis(cplx z) { return 1e-9 * std::abs(z) + 1e-12; }

  bool contains(cplx z) const {
    const double re = z.real(), im = z.imag();
    switch (kind_) {
      case Kind::All: return true;
      case Kind::SectorC: return std::abs(im) < sign_ * kappa_ * re;
      case Kind::LeftHalfClosed: return re <= 0.0;
      case Kind::RightHalfOpen: return re > 0.0;
      case Kind::UpperHalf: return im > 0.0;
      case Kind::LowerHalf: return im < 0.0;
      case Kind::QuadrantI: return re > 0.0 && im > 0.0;
      case Kind::QuadrantII: return re < 0.0 && im > 0.0;
      case Kind::QuadrantIII: return re < 0.0 && im < 0.0;
      case Kind::QuadrantIV: return re > 0.0 && im < 0.0;
      case Kind::UpperImaginaryAxis: return std::abs(re) <= eps_axis(z) && im > eps_axis(z);
      case Kind::NegativeReals: return std::abs(im) <= eps_axis(z) && re < 0.0;
      case Kind::NonNegativeReals: return std::abs(im) <= eps_axis(z) && re >= 0.0;
      case Kind::Complement: return !children_[0].contains(z);
      case Kind::Union: return children_[0].contains(z) || children_[1].contains(z);
      case Kind::SectorU:
      case Kind::ResonanceSector:
      case Kind::ArgSector: {
        if (z == cplx(0.0)) return false;
        const auto [lo, hi] = *arg_interval();
        const double a = std::arg(z);
        for (int k = -1; k <= 2; ++k) {
          const double t = a + 2.0 * pi * k;
          if (lo < t && t < hi) return true;
        }
        return false;
      }
    }
    return false;
  }

  /// Open arg interval (lo, hi) on the universal cover, lo in (-pi, pi],
  /// for every variant that is an open sector with vertex 0.
  std::optional<std::pair<double, double>> arg_interval() const {
    auto canon = [](double lo, double hi) {
      const double shift = 2.0 * pi * std::ceil((lo - pi) / (2.0 * pi));
      return std::make_pair(lo - shift, hi - shift);
    };
    switch (kind_) {
      case Kind::SectorC: {
        const double a = std::atan(kappa_);
        return sign_ > 0 ? canon(-a, a) : canon(pi - a, pi + a);
      }
      case Kind::SectorU: {
        const double w = 2.0 * std::atan(kappa_);
        return sign_ > 0 ? canon(pi / 2.0, pi / 2.0 + w) : canon(-pi / 2.0 - w, -pi / 2.0);
      }
      case Kind::QuadrantI: return canon(0.0, pi / 2.0);
      case Kind::QuadrantII: return canon(pi / 2.0, pi);
      case Kind::QuadrantIII: return canon(pi, 3.0 * pi / 2.0);
      case Kind::QuadrantIV: return canon(-pi / 2.0, 0.0);
      case Kind::UpperHalf: return canon(0.0, pi);
      case Kind::LowerHalf: return canon(-pi, 0.0);
      case Kind::RightHalfOpen: return canon(-pi / 2.0, pi / 2.0);
      case Kind::ResonanceSector:
        return phi_ >= 0.0 ? canon(-2.0 * phi_, 0.0) : canon(0.0, -2.0 * phi_);
      case Kind::ArgSector: return canon(lo_, hi_);
      default: return std::nullopt;
    }
  }

  /// The region e^{2 i phi} R: contains(rotate(R, phi), e^{2 i phi} z) == contains(R, z).
  Region rotate(double phi) const {
    const auto iv = arg_interval();
    if (!iv) fail(ErrorKind::UnsupportedVariant, "rotation needs an open sector, got " + to_string());
    return arg_sector(iv->first + 2.0 * phi, iv->second + 2.0 * phi);
  }

  /// Same open sector up to tol on both arg endpoints.
  bool same_sector(const Region& other, double tol = 1e-12) const {
    const auto a = arg_interval();
    const auto b = other.arg_interval();
    if (!a || !b) return false;
    return std::abs(a->first - b->first) <= tol && std::abs(a->second - b->second) <= tol;
  }

  std::string to_string() const {
    std::ostringstream os;
    switch (kind_) {
      case Kind::All: return "all";
      case Kind::SectorC: os << "sectorC" << (sign_ > 0 ? '+' : '-') << ":kappa=" << shortest(kappa_); return os.str();
      case Kind::SectorU: os << "sectorU" << (sign_ > 0 ? '+' : '-') << ":kappa=" << shortest(kappa_); return os.str();
      case Kind::QuadrantI: return "quadrantI";
      case Kind::QuadrantII: return "quadrantII";
      case Kind::QuadrantIII: return "quadrantIII";
      case Kind::QuadrantIV: return "quadrantIV";
      case Kind::UpperHalf: return "upper";
      case Kind::LowerHalf: return "lower";
      case Kind::LeftHalfClosed: return "left";
      case Kind::RightHalfOpen: return "right";
      case Kind::UpperImaginaryAxis: return "imag+";
      case Kind::ResonanceSector: os << "resonance:phi=" << shortest(phi_); return os.str();
      case Kind::NegativeReals: return "negreal";
      case Kind::NonNegativeReals: return "nonnegreal";
      case Kind::ArgSector: os << "arg:lo=" << shortest(lo_) << ",hi=" << shortest(hi_); return os.str();
      case Kind::Complement: return "not(" + children_[0].to_string() + ")";
      case Kind::Union: return "(" + children_[0].to_string() + ")|(" + children_[1].to_string() + ")";
    }
    return "?";
  }

  /// Parses the tags produced by to_string for the primitive variants,
  /// e.g. "sectorU+:kappa=1.0", "resonance:phi=0.5236", "quadrantII".
  static Region parse(const std::string& tag) {
    const auto colon = tag.find(':');
    const std::string head = tag.substr(0, colon);
    auto param = [&](const std::string& key) {
      if (colon == std::string::npos) fail(ErrorKind::InvalidConfig, "region '" + tag + "' needs " + key);
      const std::string rest = tag.substr(colon + 1);
      const auto eq = rest.find('=');
      if (eq == std::string::npos || rest.substr(0, eq) != key)
        fail(ErrorKind::InvalidConfig, "region '" + tag + "' needs " + key);
      try {
        return std::stod(rest.substr(eq + 1));
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidConfig, "region '" + tag + "': bad number");
      }
    };
    if (head == "all") return all();
    if (head == "sectorC+") return sector_c(+1, param("kappa"));
    if (head == "sectorC-") return sector_c(-1, param("kappa"));
    if (head == "sectorU+") return sector_u(+1, param("kappa"));
    if (head == "sectorU-") return sector_u(-1, param("kappa"));
    if (head == "quadrantI") return quadrant(1);
    if (head == "quadrantII") return quadrant(2);
    if (head == "quadrantIII") return quadrant(3);
    if (head == "quadrantIV") return quadrant(4);
    if (head == "upper") return upper_half();
    if (head == "lower") return lower_half();
    if (head == "left") return left_half_closed();
    if (head == "right") return right_half_open();
    if (head == "imag+") return upper_imaginary_axis();
    if (head == "negreal") return negative_reals();
    if (head == "nonnegreal") return non_negative_reals();
    if (head == "resonance") return resonance_sector(param("phi"));
    fail(ErrorKind::InvalidConfig, "unknown region tag '" + tag + "'");
  }

 private:
  explicit Region(Kind k) : kind_(k) {}

  // Shortest decimal that reads back to the same double.
  static std::string shortest(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  }

  static void check_kappa(double kappa) {
    if (!(kappa > 0.0)) fail(ErrorKind::KappaDomain, "kappa must be positive");
  }

  Kind kind_;
  int sign_ = 1;
  double kappa_ = 0.0;
  double phi_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<Region> children_;
};

}  // namespace cscale
