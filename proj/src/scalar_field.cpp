#include "superform/scalar_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace superform {

namespace {

using NodePtr = std::shared_ptr<const FieldNode>;

struct ConstantNode final : FieldNode {
  int n;
  double c;
  ConstantNode(int n_, double c_) : n(n_), c(c_) {}
  Jet eval(const Vec&, int order) const override {
    return Jet::constant(c, n, order);
  }
};

struct CoordinateNode final : FieldNode {
  int n, i;
  CoordinateNode(int n_, int i_) : n(n_), i(i_) {}
  Jet eval(const Vec& x, int order) const override {
    return Jet::variable(x[i], i, n, order);
  }
};

struct LinearNode final : FieldNode {
  Vec a;
  double b;
  LinearNode(Vec a_, double b_) : a(std::move(a_)), b(b_) {}
  Jet eval(const Vec& x, int order) const override {
    Jet j = Jet::constant(a.dot(x) + b, static_cast<int>(a.size()), order);
    if (order >= 1) j.g = a;
    return j;
  }
};

struct SquaredDistanceNode final : FieldNode {
  Vec a;
  explicit SquaredDistanceNode(Vec a_) : a(std::move(a_)) {}
  Jet eval(const Vec& x, int order) const override {
    const int n = static_cast<int>(a.size());
    Jet j = Jet::constant((x - a).squaredNorm(), n, order);
    if (order >= 1) j.g = 2.0 * (x - a);
    if (order >= 2) j.H = 2.0 * Mat::Identity(n, n);
    return j;
  }
};

enum class BinOp { Add, Sub, Mul, Div };

struct BinaryNode final : FieldNode {
  NodePtr a, b;
  BinOp op;
  BinaryNode(NodePtr a_, NodePtr b_, BinOp op_)
      : a(std::move(a_)), b(std::move(b_)), op(op_) {}
  Jet eval(const Vec& x, int order) const override {
    const Jet ja = a->eval(x, order);
    const Jet jb = b->eval(x, order);
    switch (op) {
      case BinOp::Add: return ja + jb;
      case BinOp::Sub: return ja - jb;
      case BinOp::Mul: return ja * jb;
      case BinOp::Div: return ja / jb;
    }
    return ja;
  }
};

struct NegNode final : FieldNode {
  NodePtr a;
  explicit NegNode(NodePtr a_) : a(std::move(a_)) {}
  Jet eval(const Vec& x, int order) const override { return -a->eval(x, order); }
};

enum class UnOp { Sqrt, Exp, Log, Sin, Cos, Sinh, Cosh, Abs };

struct UnaryNode final : FieldNode {
  NodePtr a;
  UnOp op;
  UnaryNode(NodePtr a_, UnOp op_) : a(std::move(a_)), op(op_) {}
  Jet eval(const Vec& x, int order) const override {
    const Jet ja = a->eval(x, order);
    switch (op) {
      case UnOp::Sqrt: return sqrt(ja);
      case UnOp::Exp: return exp(ja);
      case UnOp::Log: return log(ja);
      case UnOp::Sin: return sin(ja);
      case UnOp::Cos: return cos(ja);
      case UnOp::Sinh: return sinh(ja);
      case UnOp::Cosh: return cosh(ja);
      case UnOp::Abs: return abs(ja);
    }
    return ja;
  }
};

struct PowCNode final : FieldNode {
  NodePtr a;
  double c;
  PowCNode(NodePtr a_, double c_) : a(std::move(a_)), c(c_) {}
  Jet eval(const Vec& x, int order) const override {
    return pow(a->eval(x, order), c);
  }
};

struct MaxNode final : FieldNode {
  std::vector<NodePtr> args;
  explicit MaxNode(std::vector<NodePtr> args_) : args(std::move(args_)) {}
  Jet eval(const Vec& x, int order) const override {
    // ties resolved by first occurrence
    Jet best = args.front()->eval(x, order);
    for (std::size_t i = 1; i < args.size(); ++i) {
      Jet j = args[i]->eval(x, order);
      if (j.v > best.v) best = std::move(j);
    }
    return best;
  }
};

struct ComposeNode final : FieldNode {
  NodePtr f;  // on R^k
  std::vector<NodePtr> g;
  ComposeNode(NodePtr f_, std::vector<NodePtr> g_)
      : f(std::move(f_)), g(std::move(g_)) {}
  Jet eval(const Vec& x, int order) const override {
    const int k = static_cast<int>(g.size());
    const int n = static_cast<int>(x.size());
    std::vector<Jet> jg(g.size());
    Vec y(k);
    for (int i = 0; i < k; ++i) {
      jg[i] = g[i]->eval(x, order);
      y[i] = jg[i].v;
    }
    const Jet jf = f->eval(y, order);
    Jet r = Jet::constant(jf.v, n, order);
    if (order >= 1) {
      Mat J(k, n);
      for (int i = 0; i < k; ++i) J.row(i) = jg[i].g.transpose();
      r.g = J.transpose() * jf.g;
      if (order >= 2) {
        r.H = J.transpose() * jf.H * J;
        for (int i = 0; i < k; ++i) r.H += jf.g[i] * jg[i].H;
      }
    }
    return r;
  }
};

struct BumpNode final : FieldNode {
  Vec c;
  double r2;
  BumpNode(Vec c_, double r_) : c(std::move(c_)), r2(r_ * r_) {}
  Jet eval(const Vec& x, int order) const override {
    const int n = static_cast<int>(c.size());
    const double s = (x - c).squaredNorm() / r2;
    if (s >= 1.0 - 1e-12) return Jet::constant(0.0, n, order);
    const double t = 1.0 - s;
    const double w = std::exp(1.0 - 1.0 / t);
    // w(s) = exp(1 - 1/(1-s)): w' = -w/t^2, w'' = w/t^4 - 2w/t^3
    const double wp = -w / (t * t);
    const double wpp = w / (t * t * t * t) - 2.0 * w / (t * t * t);
    Jet js = Jet::constant(s, n, order);
    if (order >= 1) js.g = 2.0 * (x - c) / r2;
    if (order >= 2) js.H = (2.0 / r2) * Mat::Identity(n, n);
    return compose1(js, w, wp, wpp);
  }
};

struct NumericNode final : FieldNode {
  int n;
  std::function<double(const Vec&)> f;
  NumericNode(int n_, std::function<double(const Vec&)> f_)
      : n(n_), f(std::move(f_)) {}
  Jet eval(const Vec& x, int order) const override {
    Jet j = Jet::constant(f(x), n, order);
    if (order == 0) return j;
    const double eps = std::numeric_limits<double>::epsilon();
    const double h0 = std::cbrt(eps);
    Vec h(n);
    for (int i = 0; i < n; ++i) h[i] = h0 * std::max(1.0, std::fabs(x[i]));
    Vec xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
      xp[i] = x[i] + h[i];
      xm[i] = x[i] - h[i];
      j.g[i] = (f(xp) - f(xm)) / (2.0 * h[i]);
      if (order >= 2) {
        j.H(i, i) = (f(xp) - 2.0 * j.v + f(xm)) / (h[i] * h[i]);
      }
      xp[i] = x[i];
      xm[i] = x[i];
    }
    if (order >= 2) {
      for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
          Vec y = x;
          y[i] += h[i]; y[k] += h[k]; const double fpp = f(y);
          y[k] -= 2 * h[k];            const double fpm = f(y);
          y[i] -= 2 * h[i];            const double fmm = f(y);
          y[k] += 2 * h[k];            const double fmp = f(y);
          j.H(i, k) = j.H(k, i) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[k]);
        }
    }
    return j;
  }
};

NodePtr node_of(const ScalarField& f, const char* what) {
  if (!f.valid()) throw std::invalid_argument(std::string("invalid field in ") + what);
  return f.node();
}

ScalarField wrap(NodePtr n, int dim) { return ScalarField(std::move(n), dim); }

void require_same_dim(const ScalarField& a, const ScalarField& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("field dimension mismatch");
}

}  // namespace

ScalarField constant_field(int n, double c) {
  check_dim(n);
  return wrap(std::make_shared<ConstantNode>(n, c), n);
}

ScalarField coordinate(int n, int i) {
  check_dim(n);
  if (i < 0 || i >= n) throw std::invalid_argument("coordinate index out of range");
  return wrap(std::make_shared<CoordinateNode>(n, i), n);
}

ScalarField linear_field(const Vec& a, double b) {
  return wrap(std::make_shared<LinearNode>(a, b), static_cast<int>(a.size()));
}

ScalarField squared_distance(int n, const Vec& a) {
  if (a.size() != n) throw std::invalid_argument("center dimension mismatch");
  return wrap(std::make_shared<SquaredDistanceNode>(a), n);
}

ScalarField smoothed_norm(int n, const Vec& a, double delta) {
  return sqrt(squared_distance(n, a) + delta);
}

ScalarField radial_kernel(int n, int p, double delta, const Vec& a) {
  if (p < 0) throw std::invalid_argument("kernel order must be >= 0");
  const ScalarField nd = smoothed_norm(n, a, delta);
  if (p == 0) return log(nd);
  return (-1.0 / p) * pow(nd, -static_cast<double>(p));
}

ScalarField bump_field(int n, const Vec& c, double r) {
  if (c.size() != n) throw std::invalid_argument("center dimension mismatch");
  if (r <= 0.0) throw std::invalid_argument("bump radius must be positive");
  return wrap(std::make_shared<BumpNode>(c, r), n);
}

ScalarField numeric_field(int n, std::function<double(const Vec&)> f) {
  check_dim(n);
  return wrap(std::make_shared<NumericNode>(n, std::move(f)), n);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_dim(a, b);
  return wrap(std::make_shared<BinaryNode>(node_of(a, "+"), node_of(b, "+"), BinOp::Add), a.dim());
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_dim(a, b);
  return wrap(std::make_shared<BinaryNode>(node_of(a, "-"), node_of(b, "-"), BinOp::Sub), a.dim());
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_dim(a, b);
  return wrap(std::make_shared<BinaryNode>(node_of(a, "*"), node_of(b, "*"), BinOp::Mul), a.dim());
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  require_same_dim(a, b);
  return wrap(std::make_shared<BinaryNode>(node_of(a, "/"), node_of(b, "/"), BinOp::Div), a.dim());
}
ScalarField operator-(const ScalarField& a) {
  return wrap(std::make_shared<NegNode>(node_of(a, "neg")), a.dim());
}
ScalarField operator+(const ScalarField& a, double c) { return a + constant_field(a.dim(), c); }
ScalarField operator+(double c, const ScalarField& a) { return a + c; }
ScalarField operator-(const ScalarField& a, double c) { return a + (-c); }
ScalarField operator-(double c, const ScalarField& a) { return constant_field(a.dim(), c) - a; }
ScalarField operator*(const ScalarField& a, double c) { return a * constant_field(a.dim(), c); }
ScalarField operator*(double c, const ScalarField& a) { return a * c; }
ScalarField operator/(const ScalarField& a, double c) { return a * (1.0 / c); }

ScalarField pow(const ScalarField& a, double c) {
  return wrap(std::make_shared<PowCNode>(node_of(a, "pow"), c), a.dim());
}
ScalarField pow(const ScalarField& a, const ScalarField& b) {
  return exp(b * log(a));
}
ScalarField sqrt(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "sqrt"), UnOp::Sqrt), a.dim());
}
ScalarField exp(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "exp"), UnOp::Exp), a.dim());
}
ScalarField log(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "log"), UnOp::Log), a.dim());
}
ScalarField sin(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "sin"), UnOp::Sin), a.dim());
}
ScalarField cos(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "cos"), UnOp::Cos), a.dim());
}
ScalarField sinh(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "sinh"), UnOp::Sinh), a.dim());
}
ScalarField cosh(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "cosh"), UnOp::Cosh), a.dim());
}
ScalarField abs(const ScalarField& a) {
  return wrap(std::make_shared<UnaryNode>(node_of(a, "abs"), UnOp::Abs), a.dim());
}

ScalarField max_field(std::vector<ScalarField> args) {
  if (args.empty()) throw std::invalid_argument("max of no fields");
  std::vector<NodePtr> nodes;
  nodes.reserve(args.size());
  for (const auto& a : args) {
    require_same_dim(a, args.front());
    nodes.push_back(node_of(a, "max"));
  }
  return wrap(std::make_shared<MaxNode>(std::move(nodes)), args.front().dim());
}

ScalarField compose(const ScalarField& f, const std::vector<ScalarField>& g) {
  if (f.dim() != static_cast<int>(g.size()))
    throw std::invalid_argument("compose: arity mismatch");
  std::vector<NodePtr> nodes;
  nodes.reserve(g.size());
  for (const auto& gi : g) {
    require_same_dim(gi, g.front());
    nodes.push_back(node_of(gi, "compose"));
  }
  return wrap(std::make_shared<ComposeNode>(node_of(f, "compose"), std::move(nodes)),
              g.front().dim());
}

ScalarField translate(const ScalarField& f, const Vec& a) {
  std::vector<ScalarField> g;
  const int n = f.dim();
  g.reserve(n);
  for (int i = 0; i < n; ++i) g.push_back(coordinate(n, i) - a[i]);
  return compose(f, g);
}

VectorField constant_vector_field(int n, const Vec& v) {
  VectorField vf;
  for (int i = 0; i < v.size(); ++i) vf.comps.push_back(constant_field(n, v[i]));
  return vf;
}

VectorField position_field(int n) {
  VectorField vf;
  for (int i = 0; i < n; ++i) vf.comps.push_back(coordinate(n, i));
  return vf;
}

double unit_ball_volume(int m) {
  if (m == 0) return 1.0;
  return std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

}  // namespace superform
