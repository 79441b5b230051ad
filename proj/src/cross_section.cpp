#include "hullkit/cross_section.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

#include "hullkit/errors.hpp"

namespace hullkit {

Material Material::steel() { return Material{}; }

void Material::validate() const {
  if (!(youngs_modulus > 0.0)) throw ConfigError("material: youngs_modulus must be > 0");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    throw ConfigError("material: poisson_ratio must lie in [0, 0.5)");
  double g = youngs_modulus / (2.0 * (1.0 + poisson_ratio));
  if (std::abs(shear_modulus - g) > 1e-12 * g)
    throw ConfigError("material: shear_modulus inconsistent with E/(2(1+nu))");
  if (!(density > 0.0)) throw ConfigError("material: density must be > 0");
}

Eigen::Matrix3d Material::plane_stress_q() const {
  const double e = youngs_modulus, nu = poisson_ratio;
  Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
  const double f = e / (1.0 - nu * nu);
  q(0, 0) = f;
  q(1, 1) = f;
  q(0, 1) = q(1, 0) = nu * f;
  q(2, 2) = e / (2.0 * (1.0 + nu));
  return q;
}

void PanelSection::validate() const {
  material.validate();
  if (!(plate_thickness > 0.0)) throw ConfigError("section: plate_thickness must be > 0");
  if (!(span > 0.0) || !(width > 0.0)) throw ConfigError("section: span and width must be > 0");
  if (is_bare_plate()) return;
  if (!(web_thickness > 0.0) || !(web_height > 0.0))
    throw ConfigError("section: web dimensions must be > 0");
  if (has_flange() && !(flange_width > 0.0))
    throw ConfigError("section: flange_width must be > 0 when flange_thickness > 0");
  if (stiffener_count < 1) throw ConfigError("section: stiffener_count must be >= 1");
  if (!(stiffener_spacing > 0.0)) throw ConfigError("section: stiffener_spacing must be > 0");
  double b = stiffener_spacing * (stiffener_count + 1);
  if (std::abs(b - width) > 1e-9) {
    std::ostringstream os;
    os << "section: unequal spacing, s*(n+1) = " << b << " m but width = " << width << " m";
    throw ConfigError(os.str());
  }
}

nlohmann::json section_to_json(const PanelSection& s) {
  nlohmann::json j;
  j["schema_version"] = kSectionSchemaVersion;
  j["plate_thickness"] = s.plate_thickness;
  j["web_thickness"] = s.web_thickness;
  j["web_height"] = s.web_height;
  j["flange_thickness"] = s.flange_thickness;
  j["flange_width"] = s.flange_width;
  j["stiffener_spacing"] = s.stiffener_spacing;
  j["stiffener_count"] = s.stiffener_count;
  j["span"] = s.span;
  j["width"] = s.width;
  j["youngs_modulus"] = s.material.youngs_modulus;
  j["poisson_ratio"] = s.material.poisson_ratio;
  j["shear_modulus"] = s.material.shear_modulus;
  j["density"] = s.material.density;
  return j;
}

PanelSection section_from_json(const nlohmann::json& j) {
  if (!j.contains("schema_version"))
    throw SchemaError("section JSON: missing schema_version");
  int v = j.at("schema_version").get<int>();
  if (v != kSectionSchemaVersion) {
    std::ostringstream os;
    os << "section JSON: schema_version " << v << " (expected " << kSectionSchemaVersion << ")";
    throw SchemaError(os.str());
  }
  PanelSection s;
  s.plate_thickness = j.at("plate_thickness").get<double>();
  s.web_thickness = j.at("web_thickness").get<double>();
  s.web_height = j.at("web_height").get<double>();
  s.flange_thickness = j.at("flange_thickness").get<double>();
  s.flange_width = j.at("flange_width").get<double>();
  s.stiffener_spacing = j.at("stiffener_spacing").get<double>();
  s.stiffener_count = j.at("stiffener_count").get<int>();
  s.span = j.at("span").get<double>();
  s.width = j.at("width").get<double>();
  s.material.youngs_modulus = j.at("youngs_modulus").get<double>();
  s.material.poisson_ratio = j.at("poisson_ratio").get<double>();
  s.material.shear_modulus = j.value("shear_modulus",
      s.material.youngs_modulus / (2.0 * (1.0 + s.material.poisson_ratio)));
  s.material.density = j.value("density", 7850.0);
  return s;
}

Eigen::Matrix<double, 6, 6> AbdStiffness::assembled() const {
  Eigen::Matrix<double, 6, 6> k;
  k.block<3, 3>(0, 0) = A;
  k.block<3, 3>(0, 3) = Bc;
  k.block<3, 3>(3, 0) = C;
  k.block<3, 3>(3, 3) = D;
  return k;
}

void AbdStiffness::validate() const {
  Eigen::Matrix<double, 6, 6> k = assembled();
  double scale = k.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw ConfigError("stiffness: zero matrix");
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw ConfigError("stiffness: assembled 6x6 is not symmetric");
  Eigen::LLT<Eigen::Matrix<double, 6, 6>> llt(k);
  if (llt.info() != Eigen::Success)
    throw ConfigError("stiffness: assembled 6x6 is not positive definite (degenerate geometry)");
  if (!(d_qx > 0.0) || !(d_qy > 0.0))
    throw ConfigError("stiffness: transverse shear stiffnesses must be > 0");
}

AbdStiffness abd_from_section(const PanelSection& section) {
  section.validate();
  const Material& m = section.material;
  const Eigen::Matrix3d q = m.plane_stress_q();
  const double tp = section.plate_thickness;

  AbdStiffness k;
  k.A = q * tp;
  k.D = q * (tp * tp * tp / 12.0);

  if (!section.is_bare_plate()) {
    const double s = section.stiffener_spacing;
    const double e = m.youngs_modulus;
    // Rectangles smeared along the stiffener direction; each contributes
    // E/s * width * integral of {1, z, z^2} over its z-extent to the 11 terms.
    auto add_rect = [&](double w, double z0, double z1) {
      double i0 = z1 - z0;
      double i1 = (z1 * z1 - z0 * z0) / 2.0;
      double i2 = (z1 * z1 * z1 - z0 * z0 * z0) / 3.0;
      k.A(0, 0) += e * w * i0 / s;
      k.Bc(0, 0) += e * w * i1 / s;
      k.C(0, 0) += e * w * i1 / s;
      k.D(0, 0) += e * w * i2 / s;
    };
    const double z_web_top = -tp / 2.0;
    const double z_web_bot = z_web_top - section.web_height;
    add_rect(section.web_thickness, z_web_bot, z_web_top);
    if (section.has_flange())
      add_rect(section.flange_width, z_web_bot - section.flange_thickness, z_web_bot);
  }

  auto [dqx, dqy] = shear_stiffness(section);
  k.d_qx = section.is_bare_plate() ? dqy : dqx;  // bare plate has no web; fall back to plate shear
  k.d_qy = dqy;
  k.validate();
  return k;
}

std::pair<double, double> shear_stiffness(const PanelSection& section, double k) {
  if (!(k > 0.0 && k <= 1.0)) throw ConfigError("shear_stiffness: k must lie in (0, 1]");
  const double g = section.material.shear_modulus;
  double dqy = k * g * section.plate_thickness;
  double dqx = 0.0;
  if (section.stiffener_spacing > 0.0)
    dqx = k * g * (section.web_thickness / section.stiffener_spacing) * section.web_height;
  return {dqx, dqy};
}

StrainState invert_abd(const AbdStiffness& stiffness, const ResultantState& r) {
  Eigen::Matrix<double, 6, 6> k = stiffness.assembled();
  Eigen::LDLT<Eigen::Matrix<double, 6, 6>> ldlt(k);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw SolverError("invert_abd: singular or indefinite ABD stiffness");
  Eigen::Matrix<double, 6, 1> f;
  f << r.nxx, r.nyy, r.nxy, r.mxx, r.myy, r.mxy;
  Eigen::Matrix<double, 6, 1> eps = ldlt.solve(f);
  if (!eps.allFinite()) throw SolverError("invert_abd: non-finite strain solution");
  StrainState s;
  s.eps0 = eps.head<3>();
  s.eps1 = eps.tail<3>();
  if (!(stiffness.d_qx > 0.0) || !(stiffness.d_qy > 0.0))
    throw SolverError("invert_abd: non-positive transverse shear stiffness");
  s.gamma_xz = r.qx / stiffness.d_qx;
  s.gamma_yz = r.qy / stiffness.d_qy;
  return s;
}

ResultantState forward_abd(const AbdStiffness& k, const StrainState& s) {
  Eigen::Vector3d n = k.A * s.eps0 + k.Bc * s.eps1;
  Eigen::Vector3d mm = k.C * s.eps0 + k.D * s.eps1;
  ResultantState r;
  r.nxx = n(0);
  r.nyy = n(1);
  r.nxy = n(2);
  r.mxx = mm(0);
  r.myy = mm(1);
  r.mxy = mm(2);
  r.qx = k.d_qx * s.gamma_xz;
  r.qy = k.d_qy * s.gamma_yz;
  return r;
}

}  // namespace hullkit
