#include "specset/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace specset::io {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput(where + ": expected [re, im]");
  double re = j[0].get<double>(), im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    throw InvalidInput(where + ": non-finite value");
  return {re, im};
}

Json ext_to_json(const ExtComplex& z) {
  if (z.is_inf()) return Json("inf");
  return complex_to_json(z.value());
}

ExtComplex ext_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtComplex::inf();
    throw InvalidInput(where + ": expected [re, im] or \"inf\"");
  }
  return ExtComplex(complex_from_json(j, where));
}

double finite_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidInput(where + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(where + ": non-finite value");
  return v;
}

}  // namespace

Json matrix_to_json(const CMat& t) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < t.cols(); ++j) row.push_back(complex_to_json(t(i, j)));
    entries.push_back(row);
  }
  return Json{{"dim", t.rows()}, {"entries", entries}};
}

CMat matrix_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("entries"))
    throw InvalidInput("matrix: missing 'dim' or 'entries'");
  int dim = j.at("dim").get<int>();
  if (dim < 1) throw InvalidInput("matrix: dim must be positive");
  const Json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != dim)
    throw InvalidInput("matrix: entries must hold " + std::to_string(dim) + " rows");
  CMat t(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = entries[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InvalidInput("matrix: entries[" + std::to_string(r) + "] must hold " +
                         std::to_string(dim) + " values");
    for (int c = 0; c < dim; ++c)
      t(r, c) = complex_from_json(row[c], "matrix: entries[" + std::to_string(r) +
                                              "][" + std::to_string(c) + "]");
  }
  return t;
}

Json rational_to_json(const ScalarRational& f) {
  Json terms = Json::array();
  for (const PoleTerm& t : f.terms())
    terms.push_back(Json{{"pole", ext_to_json(t.pole)},
                         {"power", t.power},
                         {"coeff", complex_to_json(t.coeff)}});
  return Json{{"constant", complex_to_json(f.constant())}, {"terms", terms}};
}

ScalarRational rational_from_json(const Json& j) {
  if (!j.contains("constant")) throw InvalidInput("rational: missing 'constant'");
  Complex constant = complex_from_json(j.at("constant"), "rational: constant");
  std::vector<PoleTerm> terms;
  if (j.contains("terms")) {
    const Json& arr = j.at("terms");
    if (!arr.is_array()) throw InvalidInput("rational: terms must be an array");
    for (size_t k = 0; k < arr.size(); ++k) {
      const Json& t = arr[k];
      std::string where = "rational: terms[" + std::to_string(k) + "]";
      if (!t.contains("pole") || !t.contains("power") || !t.contains("coeff"))
        throw InvalidInput(where + ": needs pole, power, coeff");
      int power = t.at("power").get<int>();
      if (power < 1) throw InvalidInput(where + ": power must be >= 1");
      terms.push_back({ext_from_json(t.at("pole"), where + ".pole"), power,
                       complex_from_json(t.at("coeff"), where + ".coeff")});
    }
  }
  ScalarRational f(constant, std::move(terms));
  if (f.representation_mismatch() > 1e-10)
    throw InvalidInput("rational: representations disagree beyond 1e-10");
  return f;
}

Json domain_to_json(const Domain& d) {
  if (const auto* di = d.as_disks()) {
    Json disks = Json::array();
    for (const GeneralizedDisk& member : di->members())
      disks.push_back(disk_to_json(member));
    return Json{{"disks", disks}};
  }
  const PiecewiseCircularDomain& pc = *d.as_piecewise();
  Json curves = Json::array();
  for (const auto& curve : pc.curves()) {
    Json arcs = Json::array();
    for (const CircularArc& arc : curve)
      arcs.push_back(Json{{"center", complex_to_json(arc.center)},
                          {"radius", arc.radius},
                          {"from", arc.from},
                          {"to", arc.to},
                          {"orientation", arc.orientation}});
    curves.push_back(Json{{"arcs", arcs}});
  }
  Json exterior = Json::array();
  for (const ExteriorArcData& e : pc.exterior()) {
    Json centers = Json::array();
    for (const auto& [lambda, mu] : e.centers)
      centers.push_back(Json::array(
          {lambda.real(), lambda.imag(), mu.real(), mu.imag()}));
    exterior.push_back(Json{{"arc", e.arc_index}, {"R", e.radius}, {"centers", centers}});
  }
  Json complement = Json::array();
  for (const ExtComplex& p : pc.complement_points()) complement.push_back(ext_to_json(p));
  return Json{{"curves", curves}, {"exterior", exterior}, {"complement_points", complement}};
}

Domain domain_from_json(const Json& j) {
  if (j.contains("disks")) {
    const Json& arr = j.at("disks");
    if (!arr.is_array() || arr.empty())
      throw InvalidInput("domain: 'disks' must be a nonempty array");
    std::vector<GeneralizedDisk> members;
    for (const Json& d : arr) members.push_back(disk_from_json(d));
    return Domain(DiskIntersection(std::move(members)));
  }
  if (!j.contains("curves")) throw InvalidInput("domain: missing 'curves' or 'disks'");
  std::vector<std::vector<CircularArc>> curves;
  const Json& curve_arr = j.at("curves");
  if (!curve_arr.is_array() || curve_arr.empty())
    throw InvalidInput("domain: 'curves' must be a nonempty array");
  for (size_t c = 0; c < curve_arr.size(); ++c) {
    const Json& arcs = curve_arr[c].contains("arcs") ? curve_arr[c].at("arcs")
                                                     : curve_arr[c];
    if (!arcs.is_array() || arcs.empty())
      throw InvalidInput("domain: curves[" + std::to_string(c) + "] has no arcs");
    std::vector<CircularArc> curve;
    for (size_t a = 0; a < arcs.size(); ++a) {
      const Json& arc = arcs[a];
      std::string where =
          "domain: curves[" + std::to_string(c) + "].arcs[" + std::to_string(a) + "]";
      CircularArc out;
      out.center = complex_from_json(arc.at("center"), where + ".center");
      out.radius = finite_number(arc.at("radius"), where + ".radius");
      if (!(out.radius > 0.0)) throw InvalidInput(where + ": radius must be positive");
      out.from = finite_number(arc.at("from"), where + ".from");
      out.to = finite_number(arc.at("to"), where + ".to");
      out.orientation = arc.contains("orientation") ? arc.at("orientation").get<int>() : 1;
      if (out.orientation != 1 && out.orientation != -1)
        throw InvalidInput(where + ": orientation must be +-1");
      curve.push_back(out);
    }
    curves.push_back(std::move(curve));
  }
  std::vector<ExteriorArcData> exterior;
  if (j.contains("exterior")) {
    const Json& arr = j.at("exterior");
    for (size_t e = 0; e < arr.size(); ++e) {
      std::string where = "domain: exterior[" + std::to_string(e) + "]";
      ExteriorArcData data;
      data.arc_index = arr[e].at("arc").get<int>();
      data.radius = finite_number(arr[e].at("R"), where + ".R");
      for (const Json& quad : arr[e].at("centers")) {
        if (!quad.is_array() || quad.size() != 4)
          throw InvalidInput(where + ".centers: expected [l_re, l_im, c_re, c_im]");
        data.centers.emplace_back(
            Complex(finite_number(quad[0], where), finite_number(quad[1], where)),
            Complex(finite_number(quad[2], where), finite_number(quad[3], where)));
      }
      exterior.push_back(std::move(data));
    }
  }
  std::vector<ExtComplex> complement;
  if (j.contains("complement_points"))
    for (const Json& p : j.at("complement_points"))
      complement.push_back(ext_from_json(p, "domain: complement_points"));
  return Domain(PiecewiseCircularDomain(std::move(curves), std::move(exterior),
                                        std::move(complement)));
}

Json blaschke_to_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (Complex z : b.zeros()) zeros.push_back(complex_to_json(z));
  return Json{{"theta", b.theta()},
              {"zeros", zeros},
              {"normalization",
               b.normalization() == BlaschkeNormalization::kPlain ? "plain" : "mascioni"}};
}

BlaschkeProduct blaschke_from_json(const Json& j) {
  double theta = j.contains("theta") ? finite_number(j.at("theta"), "blaschke: theta") : 0.0;
  std::vector<Complex> zeros;
  if (j.contains("zeros")) {
    const Json& arr = j.at("zeros");
    for (size_t k = 0; k < arr.size(); ++k) {
      Complex z = complex_from_json(arr[k], "blaschke: zeros[" + std::to_string(k) + "]");
      if (std::abs(z) >= 1.0 - 1e-12)
        throw InvalidInput("blaschke: zeros[" + std::to_string(k) +
                           "] must satisfy |lambda| < 1");
      zeros.push_back(z);
    }
  }
  BlaschkeNormalization norm = BlaschkeNormalization::kPlain;
  if (j.contains("normalization")) {
    std::string s = j.at("normalization").get<std::string>();
    if (s == "mascioni")
      norm = BlaschkeNormalization::kMascioni;
    else if (s != "plain")
      throw InvalidInput("blaschke: normalization must be 'plain' or 'mascioni'");
  }
  return BlaschkeProduct(theta, std::move(zeros), norm);
}

Json disk_to_json(const GeneralizedDisk& d) {
  if (const auto* cd = std::get_if<ClosedDisk>(&d))
    return Json{{"kind", "closed"},
                {"center", complex_to_json(cd->center)},
                {"radius", cd->radius}};
  if (const auto* ed = std::get_if<ExteriorDisk>(&d))
    return Json{{"kind", "exterior"},
                {"center", complex_to_json(ed->center)},
                {"radius", ed->radius}};
  const auto& hp = std::get<HalfPlane>(d);
  return Json{{"kind", "halfplane"},
              {"anchor", complex_to_json(hp.anchor)},
              {"direction", complex_to_json(hp.direction)}};
}

GeneralizedDisk disk_from_json(const Json& j) {
  if (!j.contains("kind")) throw InvalidInput("disk: missing 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "halfplane") {
    Complex anchor = complex_from_json(j.at("anchor"), "disk: anchor");
    Complex dir = complex_from_json(j.at("direction"), "disk: direction");
    return make_half_plane(anchor, dir);
  }
  Complex center = complex_from_json(j.at("center"), "disk: center");
  double radius = finite_number(j.at("radius"), "disk: radius");
  if (!(radius > 0.0)) throw InvalidInput("disk: radius must be positive");
  if (kind == "closed") return ClosedDisk{center, radius};
  if (kind == "exterior") return ExteriorDisk{center, radius};
  throw InvalidInput("disk: kind must be closed, exterior, or halfplane");
}

Json classify_report_to_json(const ClassifyReport& report) {
  Json verdict;
  if (report.boundary)
    verdict = "boundary";
  else
    verdict = report.verdict;
  Json witness = Json::object();
  for (const auto& [k, v] : report.witness) witness[k] = v;
  Json grid = Json::object();
  for (const auto& [k, v] : report.grid) grid[k] = v;
  return Json{{"verdict", verdict},
              {"margin", report.margin},
              {"tol", report.tol},
              {"witness", witness},
              {"grid", grid}};
}

Json search_result_to_json(const SearchResult& result) {
  Json entries = Json::array();
  const MatrixRational& f = result.maximizer;
  for (int i = 0; i < f.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < f.size(); ++j) row.push_back(rational_to_json(f.at(i, j)));
    entries.push_back(row);
  }
  return Json{{"K_lower", result.k_lower},
              {"boundary_sup", result.boundary_sup},
              {"seed", result.seed},
              {"best_trace", result.best_trace},
              {"maximizer", Json{{"s", f.size()}, {"entries", entries}}}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << text;
}

CMat load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }
Domain load_domain(const std::string& path) { return domain_from_json(read_json_file(path)); }
BlaschkeProduct load_blaschke(const std::string& path) {
  return blaschke_from_json(read_json_file(path));
}
ScalarRational load_rational(const std::string& path) {
  return rational_from_json(read_json_file(path));
}
GeneralizedDisk load_disk(const std::string& path) {
  return disk_from_json(read_json_file(path));
}

}  // namespace specset::io
