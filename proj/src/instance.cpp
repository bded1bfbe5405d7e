#include "relpow/instance.hpp"

#include <fstream>
#include "json.hpp"

namespace relpow {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidParams("complex values must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json dump_complex(Complex z) { return json::array({z.real(), z.imag()}); }

Mat parse_matrix(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidParams("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols)
      throw InvalidParams("matrix rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = parse_complex(j[r][c]);
  }
  return M;
}

json dump_matrix(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      row.push_back(dump_complex(M(r, c)));
    rows.push_back(row);
  }
  return rows;
}

LinearRelation parse_relation(const json& j) {
  const int n = j.at("n").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  const json& data = j.at("data");
  if (kind == "matrix") {
    Mat M = parse_matrix(data);
    if (M.rows() != n || M.cols() != n)
      throw InvalidParams("relation data does not match n");
    return LinearRelation::from_matrix(M);
  }
  if (kind == "graph") {
    Mat G = parse_matrix(data);
    if (G.rows() != 2 * n)
      throw InvalidParams("graph data must have 2n rows");
    return LinearRelation::from_graph(G);
  }
  if (kind == "pencil") {
    if (!data.is_array() || data.size() != 2)
      throw InvalidParams("pencil data must be [B, L]");
    Mat B = parse_matrix(data[0]), L = parse_matrix(data[1]);
    if (B.rows() != n || L.rows() != n)
      throw InvalidParams("pencil matrices do not match n");
    return LinearRelation::from_pencil(B, L);
  }
  throw InvalidParams("relation kind must be graph, matrix or pencil");
}

RegionParams parse_region(const json& j) {
  RegionParams p;
  const std::string mode = j.value("mode", "HS");
  if (mode == "H")
    p.mode = RegionParams::Mode::H;
  else if (mode == "HS")
    p.mode = RegionParams::Mode::HS;
  else
    throw InvalidParams("region mode must be H or HS");
  p.alpha = j.value("alpha", p.alpha);
  p.eps = j.value("eps", p.eps);
  p.c = j.value("c", p.c);
  p.d = j.value("d", p.d);
  p.theta = j.value("theta", p.theta);
  if (j.contains("lambda0")) p.lambda0 = parse_complex(j["lambda0"]);
  p.validate();
  return p;
}

} // namespace

ProblemSpec ProblemSpec::parse(const std::string& json_text) {
  json j = json::parse(json_text);
  LinearRelation rel = parse_relation(j.at("relation"));
  Mat C = Mat::Identity(rel.dim(), rel.dim());
  if (j.contains("C")) {
    C = parse_matrix(j["C"]);
    if (C.rows() != rel.dim() || C.cols() != rel.dim())
      throw DimensionMismatch("C must be n x n");
  }
  RegionParams region;
  if (j.contains("region")) region = parse_region(j["region"]);
  Defaults d;
  if (j.contains("defaults")) {
    const json& jd = j["defaults"];
    d.tol_algebraic = jd.value("tol_algebraic", d.tol_algebraic);
    d.tol_quadrature = jd.value("tol_quadrature", d.tol_quadrature);
    d.grid_radial = jd.value("grid_radial", d.grid_radial);
    d.grid_transverse = jd.value("grid_transverse", d.grid_transverse);
    d.seed = jd.value("seed", d.seed);
  }
  return ProblemSpec{std::move(rel), std::move(C), region, d};
}

ProblemSpec ProblemSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open instance file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse(text);
}

std::string ProblemSpec::serialize() const {
  json j;
  j["relation"] = {{"n", relation.dim()},
                   {"kind", "graph"},
                   {"data", dump_matrix(relation.graph())}};
  j["C"] = dump_matrix(C);
  j["region"] = {
      {"mode", region.mode == RegionParams::Mode::H ? "H" : "HS"},
      {"alpha", region.alpha}, {"eps", region.eps},   {"c", region.c},
      {"d", region.d},         {"theta", region.theta},
      {"lambda0", dump_complex(region.lambda0)}};
  j["defaults"] = {{"tol_algebraic", defaults.tol_algebraic},
                   {"tol_quadrature", defaults.tol_quadrature},
                   {"grid_radial", defaults.grid_radial},
                   {"grid_transverse", defaults.grid_transverse},
                   {"seed", defaults.seed}};
  return j.dump(2) + "\n";
}

void ProblemSpec::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidParams("cannot write instance file: " + path);
  out << serialize();
}

} // namespace relpow
