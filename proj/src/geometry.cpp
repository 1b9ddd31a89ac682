#include "sgiga/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sgiga {

NurbsPatch::NurbsPatch(std::vector<KnotVector> knots, std::vector<Point> points,
                       std::vector<double> weights)
    : knots_(std::move(knots)), points_(std::move(points)), weights_(std::move(weights)) {
  if (knots_.empty() || knots_.size() > 3)
    throw std::invalid_argument("NurbsPatch: dimension must be 1, 2 or 3");
  std::size_t n = 1;
  for (const auto& kv : knots_) n *= static_cast<std::size_t>(kv.size());
  if (points_.size() != n)
    throw std::invalid_argument("NurbsPatch: control point count does not match knot vectors");
  if (weights_.size() != n)
    throw std::invalid_argument("NurbsPatch: weight count does not match knot vectors");
  polynomial_ = true;
  for (double w : weights_) {
    if (!(w > 0.0)) throw std::invalid_argument("NurbsPatch: weights must be positive");
    if (w != 1.0) polynomial_ = false;
  }
}

MappedPoint NurbsPatch::map_from_basis(const std::array<const BasisValues*, 3>& basis) const {
  const int d = dim();
  std::array<int, 3> n{1, 1, 1};
  std::array<int, 3> len{1, 1, 1};
  for (int l = 0; l < d; ++l) {
    n[l] = knots_[l].size();
    len[l] = static_cast<int>(basis[l]->values.size());
  }

  // Weighted sums: W = sum w N, Wx = sum w P N, and their parametric gradients.
  double W = 0.0;
  std::array<double, 3> dW{};
  Point Wx{};
  Matrix3 dWx{};
  for (int c = 0; c < len[2]; ++c) {
    for (int b = 0; b < len[1]; ++b) {
      for (int a = 0; a < len[0]; ++a) {
        const std::array<int, 3> loc{a, b, c};
        std::array<double, 3> val{1.0, 1.0, 1.0};
        std::array<double, 3> der{0.0, 0.0, 0.0};
        std::size_t idx = 0;
        std::size_t stride = 1;
        for (int l = 0; l < d; ++l) {
          val[l] = basis[l]->values[loc[l]];
          der[l] = basis[l]->derivatives[loc[l]];
          idx += static_cast<std::size_t>(basis[l]->first + loc[l]) * stride;
          stride *= static_cast<std::size_t>(n[l]);
        }
        const double w = weights_[idx];
        const Point& P = points_[idx];
        const double N = val[0] * val[1] * val[2];
        W += w * N;
        for (int i = 0; i < d; ++i) Wx[i] += w * N * P[i];
        for (int k = 0; k < d; ++k) {
          double dN = der[k];
          for (int l = 0; l < d; ++l)
            if (l != k) dN *= val[l];
          dW[k] += w * dN;
          for (int i = 0; i < d; ++i) dWx[i][k] += w * dN * P[i];
        }
      }
    }
  }

  MappedPoint out;
  if (polynomial_) {
    W = 1.0;
    dW = {};
  }
  for (int i = 0; i < d; ++i) out.x[i] = Wx[i] / W;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) out.jacobian[i][k] = (dWx[i][k] - out.x[i] * dW[k]) / W;
  inverse_transpose(out.jacobian, d, out.det);
  out.weight = W;
  out.weight_gradient = dW;
  return out;
}

MappedPoint NurbsPatch::map_point(std::span<const double> xi) const {
  const int d = dim();
  if (static_cast<int>(xi.size()) != d)
    throw std::invalid_argument("map_point: parametric point has wrong dimension");
  std::array<BasisValues, 3> basis;
  for (int l = 0; l < d; ++l) eval_basis(knots_[l], xi[l], 1, basis[l]);
  auto out = map_from_basis({&basis[0], &basis[1], &basis[2]});
  if (!(out.det > 0.0)) {
    std::ostringstream msg;
    msg << "map_point: non-positive Jacobian determinant " << out.det << " at xi = (";
    for (int l = 0; l < d; ++l) msg << (l ? ", " : "") << xi[l];
    msg << ")";
    throw GeometryError(msg.str());
  }
  return out;
}

Matrix3 inverse_transpose(const Matrix3& a, int d, double& det) {
  Matrix3 r{};
  switch (d) {
    case 1:
      det = a[0][0];
      r[0][0] = 1.0 / det;
      break;
    case 2:
      det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
      r[0][0] = a[1][1] / det;
      r[0][1] = -a[1][0] / det;
      r[1][0] = -a[0][1] / det;
      r[1][1] = a[0][0] / det;
      break;
    case 3: {
      // Cofactor matrix divided by det is the inverse transpose.
      const double c00 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
      const double c01 = a[1][2] * a[2][0] - a[1][0] * a[2][2];
      const double c02 = a[1][0] * a[2][1] - a[1][1] * a[2][0];
      const double c10 = a[0][2] * a[2][1] - a[0][1] * a[2][2];
      const double c11 = a[0][0] * a[2][2] - a[0][2] * a[2][0];
      const double c12 = a[0][1] * a[2][0] - a[0][0] * a[2][1];
      const double c20 = a[0][1] * a[1][2] - a[0][2] * a[1][1];
      const double c21 = a[0][2] * a[1][0] - a[0][0] * a[1][2];
      const double c22 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
      det = a[0][0] * c00 + a[0][1] * c01 + a[0][2] * c02;
      r = {{{c00 / det, c01 / det, c02 / det},
            {c10 / det, c11 / det, c12 / det},
            {c20 / det, c21 / det, c22 / det}}};
      break;
    }
    default:
      throw std::invalid_argument("inverse_transpose: dimension must be 1, 2 or 3");
  }
  return r;
}

NurbsPatch unit_hypercube(int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("unit_hypercube: d must be 1, 2 or 3");
  const std::vector<double> z{0.0, 1.0};
  std::vector<KnotVector> knots(static_cast<std::size_t>(d), make_open_knot_vector(1, z, 0));
  std::vector<Point> points;
  const int corners = 1 << d;
  for (int c = 0; c < corners; ++c) {
    Point p{};
    for (int l = 0; l < d; ++l) p[l] = (c >> l) & 1;
    points.push_back(p);
  }
  return NurbsPatch(std::move(knots), std::move(points),
                    std::vector<double>(static_cast<std::size_t>(corners), 1.0));
}

NurbsPatch quarter_annulus(int d, double r_in, double r_out, double height) {
  if (d != 2 && d != 3) throw std::invalid_argument("quarter_annulus: d must be 2 or 3");
  if (!(r_in > 0.0 && r_in < r_out))
    throw std::invalid_argument("quarter_annulus: need 0 < r_in < r_out");
  if (d == 3 && !(height > 0.0)) throw std::invalid_argument("quarter_annulus: height must be positive");

  const std::vector<double> z{0.0, 1.0};
  std::vector<KnotVector> knots{make_open_knot_vector(1, z, 0), make_open_knot_vector(2, z, 1)};
  const double s = std::sqrt(0.5);
  const std::array<Point, 3> arc{{{1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, {0.0, 1.0, 0.0}}};
  const std::array<double, 3> arc_w{1.0, s, 1.0};

  std::vector<Point> points;
  std::vector<double> weights;
  const int layers = d == 3 ? 2 : 1;
  for (int k = 0; k < layers; ++k) {
    for (int j = 0; j < 3; ++j) {
      for (double r : {r_in, r_out}) {
        points.push_back({r * arc[j][0], r * arc[j][1], d == 3 ? k * height : 0.0});
        weights.push_back(arc_w[j]);
      }
    }
  }
  if (d == 3) knots.push_back(make_open_knot_vector(1, z, 0));
  return NurbsPatch(std::move(knots), std::move(points), std::move(weights));
}

std::string patch_to_json(const NurbsPatch& patch) {
  nlohmann::json j;
  const int d = patch.dim();
  j["dim"] = d;
  j["degrees"] = nlohmann::json::array();
  j["knots"] = nlohmann::json::array();
  for (const auto& kv : patch.knots()) {
    j["degrees"].push_back(kv.degree());
    j["knots"].push_back(std::vector<double>(kv.knots().begin(), kv.knots().end()));
  }
  j["points"] = nlohmann::json::array();
  for (const auto& p : patch.points())
    j["points"].push_back(std::vector<double>(p.begin(), p.begin() + d));
  j["weights"] = patch.weights();
  return j.dump(2);
}

NurbsPatch patch_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int d = j.at("dim").get<int>();
  const auto degrees = j.at("degrees").get<std::vector<int>>();
  const auto knots = j.at("knots").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(degrees.size()) != d || static_cast<int>(knots.size()) != d)
    throw std::invalid_argument("patch_from_json: degrees/knots length must equal dim");
  std::vector<KnotVector> kvs;
  for (int l = 0; l < d; ++l) kvs.emplace_back(degrees[l], knots[l]);
  std::vector<Point> points;
  for (const auto& row : j.at("points")) {
    const auto v = row.get<std::vector<double>>();
    if (static_cast<int>(v.size()) != d)
      throw std::invalid_argument("patch_from_json: control point has wrong dimension");
    Point p{};
    for (int l = 0; l < d; ++l) p[l] = v[l];
    points.push_back(p);
  }
  return NurbsPatch(std::move(kvs), std::move(points), j.at("weights").get<std::vector<double>>());
}

void write_patch(const NurbsPatch& patch, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_patch: cannot open " + path.string());
  out << patch_to_json(patch) << '\n';
}

NurbsPatch read_patch(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_patch: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return patch_from_json(buf.str());
}

}  // namespace sgiga
