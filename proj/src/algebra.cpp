#include "superform/algebra.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include <Eigen/Eigenvalues>

namespace superform {

int merge_inversions(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  while (b) {
    const int i = __builtin_ctz(b);
    inv += __builtin_popcount(a >> (i + 1));
    b &= b - 1;
  }
  return inv;
}

namespace {

inline double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// sign of (dx_I1 dxi_J1)(dx_I2 dxi_J2) -> dx_{I1|I2} dxi_{J1|J2}
double wedge_sign(IndexPair a, IndexPair b) {
  int s = a.xideg() * b.xdeg();
  s += merge_inversions(a.xmask, b.xmask);
  s += merge_inversions(a.ximask, b.ximask);
  return parity(s);
}

}  // namespace

PointSuperform PointSuperform::one(int dim) {
  PointSuperform f(dim);
  f.add_term({0, 0}, 1.0);
  return f;
}

PointSuperform PointSuperform::monomial(int dim, IndexPair m, double c) {
  PointSuperform f(dim);
  if (m.xmask >> dim || m.ximask >> dim)
    throw std::invalid_argument("monomial index beyond dimension");
  f.add_term(m, c);
  return f;
}

PointSuperform PointSuperform::dx(int dim, int i) {
  return monomial(dim, {static_cast<std::uint16_t>(1u << i), 0});
}

PointSuperform PointSuperform::dxi(int dim, int i) {
  return monomial(dim, {0, static_cast<std::uint16_t>(1u << i)});
}

PointSuperform PointSuperform::one_form(const Vec& coeffs) {
  PointSuperform f(static_cast<int>(coeffs.size()));
  for (int i = 0; i < coeffs.size(); ++i)
    f.add_term({static_cast<std::uint16_t>(1u << i), 0}, coeffs[i]);
  return f;
}

PointSuperform PointSuperform::one_form_xi(const Vec& coeffs) {
  PointSuperform f(static_cast<int>(coeffs.size()));
  for (int i = 0; i < coeffs.size(); ++i)
    f.add_term({0, static_cast<std::uint16_t>(1u << i)}, coeffs[i]);
  return f;
}

PointSuperform PointSuperform::from_matrix(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  PointSuperform f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.add_term({static_cast<std::uint16_t>(1u << i),
                  static_cast<std::uint16_t>(1u << j)},
                 m(i, j));
  return f;
}

PointSuperform PointSuperform::kaehler(int dim) {
  PointSuperform f(dim);
  for (int i = 0; i < dim; ++i)
    f.add_term({static_cast<std::uint16_t>(1u << i),
                static_cast<std::uint16_t>(1u << i)},
               1.0);
  return f;
}

double PointSuperform::coeff(IndexPair m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void PointSuperform::add_term(IndexPair m, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void PointSuperform::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::fabs(it->second) <= eps)
      it = terms_.erase(it);
    else
      ++it;
  }
}

bool PointSuperform::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto first = terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    if (m.xdeg() != first.xdeg() || m.xideg() != first.xideg()) return false;
  return true;
}

std::pair<int, int> PointSuperform::bidegree() const {
  if (!is_homogeneous()) throw std::logic_error("bidegree of a mixed-degree form");
  if (terms_.empty()) return {0, 0};
  const auto m = terms_.begin()->first;
  return {m.xdeg(), m.xideg()};
}

Mat PointSuperform::matrix_11() const {
  Mat m = Mat::Zero(dim_, dim_);
  for (const auto& [ip, c] : terms_) {
    if (ip.xdeg() != 1 || ip.xideg() != 1)
      throw std::invalid_argument("matrix_11 requires a (1,1)-form");
    m(__builtin_ctz(ip.xmask), __builtin_ctz(ip.ximask)) = c;
  }
  return m;
}

double PointSuperform::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [ip, c] : terms_) m = std::max(m, std::fabs(c));
  return m;
}

PointSuperform& PointSuperform::operator+=(const PointSuperform& o) {
  if (dim_ == 0) dim_ = o.dim_;
  if (dim_ != o.dim_) throw std::invalid_argument("superform dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PointSuperform& PointSuperform::operator-=(const PointSuperform& o) {
  if (dim_ == 0) dim_ = o.dim_;
  if (dim_ != o.dim_) throw std::invalid_argument("superform dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PointSuperform& PointSuperform::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string PointSuperform::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < dim_; ++i)
      if (m.xmask & (1u << i)) os << " dx" << (i + 1);
    for (int i = 0; i < dim_; ++i)
      if (m.ximask & (1u << i)) os << " dxi" << (i + 1);
  }
  return os.str();
}

PointSuperform wedge(const PointSuperform& a, const PointSuperform& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
  PointSuperform r(a.dim());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.xmask & mb.xmask) continue;   // repeated dx generator
      if (ma.ximask & mb.ximask) continue; // repeated dxi generator
      const IndexPair m{static_cast<std::uint16_t>(ma.xmask | mb.xmask),
                        static_cast<std::uint16_t>(ma.ximask | mb.ximask)};
      r.add_term(m, ca * cb * wedge_sign(ma, mb));
    }
  }
  return r;
}

PointSuperform wedge_power(const PointSuperform& a, int k) {
  if (k < 0) throw std::invalid_argument("negative wedge power");
  PointSuperform r = PointSuperform::one(a.dim());
  for (int i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

PointSuperform apply_j(const PointSuperform& a) {
  PointSuperform r(a.dim());
  for (const auto& [m, c] : a.terms()) {
    const int p = m.xdeg(), q = m.xideg();
    // factor-wise: dx_I -> dxi_I, dxi_J -> (-1)^q dx_J, then move the new
    // dx block in front of the new dxi block: (-1)^{pq}
    const double s = parity(q + p * q);
    r.add_term({m.ximask, m.xmask}, c * s);
  }
  return r;
}

namespace {

// dx_k _| monomial
void contract_dx(int k, IndexPair m, double c, PointSuperform& out) {
  const std::uint32_t bit = 1u << k;
  if (!(m.xmask & bit)) return;
  const int before = __builtin_popcount(m.xmask & (bit - 1));
  out.add_term({static_cast<std::uint16_t>(m.xmask & ~bit), m.ximask},
               c * parity(before));
}

// dxi_k _| monomial
void contract_dxi(int k, IndexPair m, double c, PointSuperform& out) {
  const std::uint32_t bit = 1u << k;
  if (!(m.ximask & bit)) return;
  const int before = m.xdeg() + __builtin_popcount(m.ximask & (bit - 1));
  out.add_term({m.xmask, static_cast<std::uint16_t>(m.ximask & ~bit)},
               c * parity(before));
}

}  // namespace

PointSuperform contract(const PointSuperform& c, const PointSuperform& a) {
  if (c.dim() != a.dim()) throw std::invalid_argument("contract: dimension mismatch");
  PointSuperform r(a.dim());
  for (const auto& [mc, cc] : c.terms()) {
    if (mc.degree() != 1)
      throw std::invalid_argument("contract: left factor must be a 1-form");
    if (mc.xdeg() == 1) {
      const int k = __builtin_ctz(mc.xmask);
      for (const auto& [m, ca] : a.terms()) contract_dx(k, m, cc * ca, r);
    } else {
      const int k = __builtin_ctz(mc.ximask);
      for (const auto& [m, ca] : a.terms()) contract_dxi(k, m, cc * ca, r);
    }
  }
  return r;
}

PointSuperform contract_vector(const Vec& v, const PointSuperform& a) {
  return contract(PointSuperform::one_form(v), a);
}

PointSuperform cup(const PointSuperform& f, const PointSuperform& a) {
  if (!f.is_homogeneous() || f.bidegree() != std::pair<int, int>{1, 1})
    throw std::invalid_argument("cup: left factor must have bidegree (1,1)");
  PointSuperform r(a.dim());
  for (const auto& [mf, cf] : f.terms()) {
    const int i = __builtin_ctz(mf.xmask);
    const int j = __builtin_ctz(mf.ximask);
    PointSuperform contracted(a.dim());
    for (const auto& [m, ca] : a.terms()) contract_dx(i, m, ca, contracted);
    r -= cf * wedge(PointSuperform::dxi(a.dim(), j), contracted);
  }
  return r;
}

double berezin_top(const PointSuperform& a) {
  const int n = a.dim();
  const std::uint16_t full = static_cast<std::uint16_t>((1u << n) - 1);
  // interleaved top = c_n * canonical top
  return volume_constant(n) * a.coeff({full, full});
}

PointSuperform pullback_linear(const Mat& a_matrix, const PointSuperform& a) {
  if (a_matrix.rows() != a.dim())
    throw std::invalid_argument("pullback_linear: matrix rows must match form dimension");
  const int m = static_cast<int>(a_matrix.cols());
  check_dim(m);
  // images of the generators
  std::vector<PointSuperform> dx_img, dxi_img;
  for (int i = 0; i < a.dim(); ++i) {
    dx_img.push_back(PointSuperform::one_form(a_matrix.row(i).transpose()));
    dxi_img.push_back(PointSuperform::one_form_xi(a_matrix.row(i).transpose()));
  }
  PointSuperform r(m);
  for (const auto& [mono, c] : a.terms()) {
    PointSuperform term = PointSuperform::one(m) * c;
    for (int i = 0; i < a.dim() && !term.empty(); ++i)
      if (mono.xmask & (1u << i)) term = wedge(term, dx_img[i]);
    for (int i = 0; i < a.dim() && !term.empty(); ++i)
      if (mono.ximask & (1u << i)) term = wedge(term, dxi_img[i]);
    r += term;
  }
  return r;
}

double trace_restricted(const PointSuperform& f, const Mat& basis) {
  const Mat m = f.matrix_11();
  const Mat gram = basis.transpose() * basis;
  if ((gram - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("trace_restricted: basis not orthonormal");
  double tr = 0.0;
  for (int k = 0; k < basis.cols(); ++k) tr += basis.col(k).dot(m * basis.col(k));
  return tr;
}

bool is_positive_11(const PointSuperform& f, double tau) {
  const Mat m = f.matrix_11();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol::alg * scale * 100)
    throw std::invalid_argument("is_positive_11: asymmetric coefficient matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
  return es.eigenvalues().minCoeff() >= -tau;
}

bool is_weakly_positive(const PointSuperform& a, int trials, std::uint64_t seed,
                        double tau) {
  if (a.empty()) return true;
  if (!a.is_homogeneous())
    throw std::invalid_argument("is_weakly_positive: mixed-degree form");
  const auto [p, q] = a.bidegree();
  if (p != q) return false;
  const int n = a.dim();
  const int m = n - p;  // number of complementary simple factors
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    PointSuperform prod = a;
    for (int j = 0; j < m; ++j) {
      const PointSuperform w = PointSuperform::one_form(rng.unit_vector(n));
      prod = wedge(prod, w);
      prod = wedge(prod, sharp(w));
    }
    if (berezin_top(prod) < -tau) return false;
  }
  return true;
}

std::string to_json(const PointSuperform& a) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : a.terms()) {
    nlohmann::json t;
    t["I"] = nlohmann::json::array();
    t["J"] = nlohmann::json::array();
    for (int i = 0; i < a.dim(); ++i) {
      if (m.xmask & (1u << i)) t["I"].push_back(i + 1);
      if (m.ximask & (1u << i)) t["J"].push_back(i + 1);
    }
    t["c"] = c;
    arr.push_back(t);
  }
  return arr.dump();
}

PointSuperform superform_from_json(int dim, const std::string& json_text) {
  PointSuperform f(dim);
  const auto arr = nlohmann::json::parse(json_text);
  for (const auto& t : arr) {
    IndexPair m;
    for (const auto& i : t.at("I")) m.xmask |= 1u << (i.get<int>() - 1);
    for (const auto& j : t.at("J")) m.ximask |= 1u << (j.get<int>() - 1);
    f.add_term(m, t.at("c").get<double>());
  }
  return f;
}

}  // namespace superform
