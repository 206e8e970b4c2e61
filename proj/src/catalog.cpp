#include "nilsoliton/catalog.hpp"

#include <cmath>
#include <sstream>

namespace nilsoliton::catalog {

namespace {

constexpr double kDomainSlack = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void require_normalized(const Bracket& b, Normalization norm) {
  if (norm == Normalization::any) return;
  require(std::abs(b.squared_norm() - 4.0) <= 1e-9, "parameters must satisfy the scal = -1 normalization");
}

// Index pairs of Lambda^2 R^4 in the order A, B, C, D, E, F.
constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

template <int Center>
Bracket two_step(const std::array<Eigen::Matrix<double, Center, 1>, 6>& values) {
  std::vector<Term> terms;
  for (std::size_t p = 0; p < kPairs.size(); ++p)
    for (int k = 0; k < Center; ++k)
      if (values[p](k) != 0.0) terms.push_back({kPairs[p].first, kPairs[p].second, 4 + k, values[p](k)});
  return Bracket(4 + Center, std::move(terms));
}

Operator block_diagonal(const Operator& block, int copies) {
  const Eigen::Index m = block.rows();
  Operator out = Operator::Zero(m * copies, m * copies);
  for (int c = 0; c < copies; ++c) out.block(c * m, c * m, m, m) = block;
  return out;
}

}  // namespace

Operator symplectic_j(int n) {
  const int dim = 2 * n;
  Operator j = Operator::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) j(i, dim - 1 - i) = i < n ? -1.0 : 1.0;
  return j;
}

Operator complex_j(int n) {
  Operator block(2, 2);
  block << 0, -1, 1, 0;
  return block_diagonal(block, n);
}

std::array<Operator, 3> quaternion_triple() {
  Operator j1(4, 4), j2(4, 4), j3(4, 4);
  j1 << 0, -1, 0, 0,
        1, 0, 0, 0,
        0, 0, 0, -1,
        0, 0, 1, 0;
  j2 << 0, 0, -1, 0,
        0, 0, 0, 1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  j3 << 0, 0, 0, -1,
        0, 0, -1, 0,
        0, 1, 0, 0,
        1, 0, 0, 0;
  return {j1, j2, j3};
}

StructureTensor hypercomplex_structure() {
  const auto q = quaternion_triple();
  return StructureTensor::hypercomplex(block_diagonal(q[0], 2), block_diagonal(q[1], 2), block_diagonal(q[2], 2));
}

Entry heisenberg3() {
  return {"heisenberg3", Bracket(3, {{0, 1, 2, 1.0}}), StructureTensor::none(), "h3"};
}

Entry filiform4() {
  return {"filiform4", Bracket(4, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}), StructureTensor::none(), "n4 (filiform)"};
}

Entry heisenberg_symplectic(int n) {
  require(n >= 2, "heisenberg_symplectic needs n >= 2 (dimension 2n >= 4)");
  return {"heisenberg_symplectic", Bracket(2 * n, {{0, 1, 2, 1.0}}), StructureTensor::symplectic(symplectic_j(n)),
          "h3 + R^" + std::to_string(2 * n - 3)};
}

Entry filiform4_symplectic() {
  Entry e = filiform4();
  e.name = "filiform4_symplectic";
  e.structure = StructureTensor::symplectic(symplectic_j(2));
  return e;
}

Entry symplectic_abc(double a, double b, double c, Normalization norm) {
  Bracket mu(6, {{0, 1, 3, a}, {0, 2, 4, b}, {1, 2, 5, c}});
  require_normalized(mu, norm);
  return {"symplectic_abc", std::move(mu), StructureTensor::symplectic(symplectic_j(3)),
          "(0,0,0,12,13,23) for abc != 0"};
}

Entry symplectic_abc_curve(double t) {
  require(t >= -kDomainSlack && t <= 1.0 / std::sqrt(3.0) + kDomainSlack, "t must lie in [0, 1/sqrt(3)]");
  t = std::clamp(t, 0.0, 1.0 / std::sqrt(3.0));
  const double s = (-t + std::sqrt(4.0 - 3.0 * t * t)) / 2.0;
  Entry e = symplectic_abc(s, s + t, t, Normalization::any);
  e.name = "symplectic_abc_curve";
  e.label = t == 0.0 ? "(0,0,0,0,12,13)" : "(0,0,0,12,13,23)";
  return e;
}

Entry complex_family(const ComplexParams& p, Normalization norm) {
  Bracket mu = two_step<2>({p.a, p.b, p.c, p.d, p.e, p.f});
  require_normalized(mu, norm);
  return {"complex_family", std::move(mu), StructureTensor::complex(complex_j(3)), ""};
}

Entry complex_abelian_curve(double s) {
  require(s >= -kDomainSlack && s <= 1.0 / std::sqrt(2.0) + kDomainSlack, "s must lie in [0, 1/sqrt(2)]");
  const double t = std::sqrt(std::max(0.0, 1.0 - s * s));
  ComplexParams p;
  p.a = {s, t};
  p.f = {-s, t};
  Entry e = complex_family(p, Normalization::any);
  e.name = "complex_abelian_curve";
  e.label = s > 0 ? "h3 + h3" : "h3 + R^3";
  return e;
}

Entry complex_iwasawa_curve(double s) {
  const double bound = 1.0 / std::sqrt(2.0);
  require(std::abs(s) <= bound + kDomainSlack, "s must lie in [-1/sqrt(2), 1/sqrt(2)]");
  const double t = std::sqrt(std::max(0.0, 0.5 - s * s));
  ComplexParams p;
  p.a = {s, t};
  p.f = {-s, t};
  p.b = {0.5, 0.0};
  p.c = {0.5, 0.0};
  p.d = {-0.5, 0.0};
  p.e = {0.5, 0.0};
  Entry e = complex_family(p, Normalization::any);
  e.name = "complex_iwasawa_curve";
  e.label = t != 0.0 ? "complex Heisenberg" : "";
  return e;
}

Entry complex_htype_curve(double s) {
  require(s >= -kDomainSlack && s <= 1.0 / std::sqrt(2.0) + kDomainSlack, "s must lie in [0, 1/sqrt(2)]");
  const double t = std::sqrt(std::max(0.0, 1.0 - s * s));
  ComplexParams p;
  p.a = {s, 0.0};
  p.f = {-s, 0.0};
  p.b = {0.0, t};
  p.e = {0.0, t};
  Entry e = complex_family(p, Normalization::any);
  e.name = "complex_htype_curve";
  e.label = s > 0 ? "complex Heisenberg" : "h5 + R";
  return e;
}

Entry hypercomplex_family(const Eigen::Vector4d& a, const Eigen::Vector4d& b, const Eigen::Vector4d& c,
                          const Eigen::Vector4d& t, Normalization norm) {
  const auto q = quaternion_triple();
  const Eigen::Vector4d d = -c + t;
  const Eigen::Vector4d e = b + q[0] * t;
  const Eigen::Vector4d f = -a + q[1] * t;
  Bracket mu = two_step<4>({a, b, c, d, e, f});
  require_normalized(mu, norm);
  return {"hypercomplex_family", std::move(mu), hypercomplex_structure(), t.isZero(0.0) ? "abelian" : ""};
}

Entry hypercomplex_rst(double r, double s, double t) {
  require(r >= -kDomainSlack && r <= s + kDomainSlack && s <= t + kDomainSlack, "need 0 <= r <= s <= t");
  require(std::abs(r * r + s * s + t * t - 2.0) <= 1e-9, "need r^2 + s^2 + t^2 = 2");
  const double w = 1.0 / std::sqrt(2.0);
  Entry e = hypercomplex_family({0, w * r, 0, 0}, {0, 0, w * s, 0}, {0, 0, 0, w * t}, Eigen::Vector4d::Zero());
  e.name = "hypercomplex_rst";
  e.label = r > 0 ? "g3" : (s > 0 ? "g2" : "g1");
  return e;
}

Entry hypercomplex_5g3(const Eigen::Vector3d& p3, const Eigen::Vector3d& p4) {
  require(std::abs(2.0 * (p3.squaredNorm() + p4.squaredNorm()) - 0.25) <= 1e-9, "need |v3|^2 + |v4|^2 = 1/4");
  require(p3.squaredNorm() > p4.squaredNorm(), "need |v3| > |v4|");
  const double w = 1.0 / std::sqrt(2.0);
  const double u = std::sqrt(3.0 / 8.0);
  const Eigen::Vector4d a(w, 0, p3(0), p4(0));
  const Eigen::Vector4d b(0, u, p3(1), p4(1));
  const Eigen::Vector4d c(0, 0, p3(2), p4(2));
  Entry e = hypercomplex_family(a, b, c, Eigen::Vector4d::Zero());
  e.name = "hypercomplex_5g3";
  e.label = "g3";
  return e;
}

Entry hypercomplex_curve(double t) {
  const double bound = 1.0 / std::sqrt(3.0);
  require(t >= -kDomainSlack && t <= bound + kDomainSlack, "t must lie in [0, 1/sqrt(3)]");
  t = std::clamp(t, 0.0, bound);
  const double r = std::sqrt(std::max(0.0, 1.0 - 3.0 * t * t));
  Entry e = hypercomplex_family({r, t, 0, 0}, {0, 0, t, 0}, {0, 0, 0, t}, {0, 0, 0, 2 * t}, Normalization::any);
  e.name = "hypercomplex_curve";
  e.label = t == 0.0 ? "g1" : (t < bound ? "u(2) + C^2" : "g3");
  return e;
}

const std::vector<Constructor>& constructors() {
  auto vec2 = [](std::span<const double> p, std::size_t at) { return Eigen::Vector2d(p[at], p[at + 1]); };
  auto vec4 = [](std::span<const double> p, std::size_t at) {
    return Eigen::Vector4d(p[at], p[at + 1], p[at + 2], p[at + 3]);
  };
  static const std::vector<Constructor> table = {
      {"heisenberg3", "", "no parameters", 0, [](auto) { return heisenberg3(); }},
      {"filiform4", "", "no parameters", 0, [](auto) { return filiform4(); }},
      {"heisenberg_symplectic", "n", "integer n >= 2 (dimension 2n)", 1,
       [](std::span<const double> p) {
         require(p[0] == std::floor(p[0]), "n must be an integer");
         return heisenberg_symplectic(static_cast<int>(p[0]));
       }},
      {"filiform4_symplectic", "", "no parameters", 0, [](auto) { return filiform4_symplectic(); }},
      {"symplectic_abc", "a b c", "a^2 + b^2 + c^2 = 2 (closed iff a - b + c = 0)", 3,
       [](std::span<const double> p) { return symplectic_abc(p[0], p[1], p[2]); }},
      {"symplectic_abc_curve", "t", "0 <= t <= 1/sqrt(3)", 1,
       [](std::span<const double> p) { return symplectic_abc_curve(p[0]); }},
      {"complex_family", "a1 a2 b1 b2 c1 c2 d1 d2 e1 e2 f1 f2", "|v1|^2 + |v2|^2 = 2", 12,
       [vec2](std::span<const double> p) {
         ComplexParams c;
         c.a = vec2(p, 0);
         c.b = vec2(p, 2);
         c.c = vec2(p, 4);
         c.d = vec2(p, 6);
         c.e = vec2(p, 8);
         c.f = vec2(p, 10);
         return complex_family(c);
       }},
      {"complex_abelian_curve", "s", "0 <= s <= 1/sqrt(2)", 1,
       [](std::span<const double> p) { return complex_abelian_curve(p[0]); }},
      {"complex_iwasawa_curve", "s", "-1/sqrt(2) <= s <= 1/sqrt(2)", 1,
       [](std::span<const double> p) { return complex_iwasawa_curve(p[0]); }},
      {"complex_htype_curve", "s", "0 <= s <= 1/sqrt(2)", 1,
       [](std::span<const double> p) { return complex_htype_curve(p[0]); }},
      {"hypercomplex_family", "A(4) B(4) C(4) T(4)", "|v1|^2 + ... + |v4|^2 = 2", 16,
       [vec4](std::span<const double> p) {
         return hypercomplex_family(vec4(p, 0), vec4(p, 4), vec4(p, 8), vec4(p, 12));
       }},
      {"hypercomplex_rst", "r s t", "0 <= r <= s <= t, r^2 + s^2 + t^2 = 2", 3,
       [](std::span<const double> p) { return hypercomplex_rst(p[0], p[1], p[2]); }},
      {"hypercomplex_5g3", "a3 b3 c3 a4 b4 c4", "2(|p3|^2 + |p4|^2) = 1/4, |p3| > |p4|", 6,
       [](std::span<const double> p) {
         return hypercomplex_5g3(Eigen::Vector3d(p[0], p[1], p[2]), Eigen::Vector3d(p[3], p[4], p[5]));
       }},
      {"hypercomplex_curve", "t", "0 <= t <= 1/sqrt(3)", 1,
       [](std::span<const double> p) { return hypercomplex_curve(p[0]); }},
  };
  return table;
}

Entry emit(const std::string& name, std::span<const double> params) {
  for (const auto& c : constructors()) {
    if (c.name != name) continue;
    if (params.size() != c.arity) {
      std::ostringstream msg;
      msg << name << " takes " << c.arity << " parameter(s), got " << params.size();
      throw DomainError(msg.str());
    }
    return c.build(params);
  }
  throw DomainError("unknown catalog entry '" + name + "'");
}

}  // namespace nilsoliton::catalog
