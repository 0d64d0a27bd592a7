#include "mcnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

namespace mcnet {

WeightedGraph::WeightedGraph(Matrix weights) : weights_(std::move(weights)) {
  require(weights_.rows() == weights_.cols(), "weight matrix must be square");
  require(weights_.rows() > 0, "graph needs at least one node");
  const Index n = weights_.rows();
  for (Index i = 0; i < n; ++i) {
    require(weights_(i, i) == 0.0, "weight matrix must have zero diagonal (no loops)");
    for (Index j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      require(std::isfinite(w) && w >= 0.0, "weights must be finite and nonnegative");
      require(w == weights_(j, i), "weight matrix must be symmetric");
    }
  }
  degrees_ = weights_.rowwise().sum();
}

WeightedGraph WeightedGraph::from_edges(Index n, const std::vector<Edge>& edges) {
  require(n > 0, "graph needs at least one node");
  Matrix w = Matrix::Zero(n, n);
  for (const auto& e : edges) {
    require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n, "edge endpoint out of range");
    require(e.u != e.v, "self-loop edges are not allowed");
    require(e.weight > 0.0 && std::isfinite(e.weight), "edge weight must be positive");
    require(w(e.u, e.v) == 0.0, "duplicate edge");
    w(e.u, e.v) = e.weight;
    w(e.v, e.u) = e.weight;
  }
  return WeightedGraph(std::move(w));
}

WeightedGraph WeightedGraph::empty(Index n) { return WeightedGraph(Matrix::Zero(n, n)); }

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (Index i = 0; i < size(); ++i)
    for (Index j = i + 1; j < size(); ++j)
      if (weights_(i, j) > 0.0) out.push_back({i, j, weights_(i, j)});
  return out;
}

bool WeightedGraph::is_regular(double tol) const {
  const double lo = degrees_.minCoeff();
  const double hi = degrees_.maxCoeff();
  return hi - lo <= tol * std::max(1.0, hi);
}

LaplacianView laplacian(const WeightedGraph& g) {
  LaplacianView lv;
  lv.degrees = g.degrees();
  lv.laplacian = -g.weights();
  lv.laplacian.diagonal() = lv.degrees;
  return lv;
}

Vector apply_laplacian(const LaplacianView& lv, const Vector& x) {
  require_size(x.size(), lv.size(), "apply_laplacian");
  return lv.laplacian * x;
}

double quadratic_form(const LaplacianView& lv, const Vector& x) {
  require_size(x.size(), lv.size(), "quadratic_form");
  return x.dot(lv.laplacian * x);
}

bool is_connected(const WeightedGraph& g) {
  const Index n = g.size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index count = 1;
  while (!stack.empty()) {
    const Index i = stack.back();
    stack.pop_back();
    for (Index j = 0; j < n; ++j) {
      if (!seen[j] && g.weight(i, j) > 0.0) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

Vector symmetric_eigenvalues(const Matrix& input, double tol, int max_sweeps) {
  require(input.rows() == input.cols(), "symmetric_eigenvalues: matrix must be square");
  Matrix a = input;
  const Index n = a.rows();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) break;

    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p, q), small-angle branch of tan(theta).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector ev = a.diagonal();
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

double lambda_1(const WeightedGraph& g) {
  if (!is_connected(g)) {
    throw DomainError("lambda_1 is undefined for a disconnected graph");
  }
  if (g.size() == 1) {
    throw DomainError("lambda_1 is undefined for a single-node graph");
  }
  const Vector ev = symmetric_eigenvalues(laplacian(g).laplacian);
  return ev(1);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

template <class T>
bool parse_number(std::string_view f, T& out) {
  const auto* end = f.data() + f.size();
  auto [ptr, ec] = std::from_chars(f.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

WeightedGraph parse_graph(std::string_view text, const std::string& source) {
  Index n = -1;
  Matrix w;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (n < 0) {
      long long value = 0;
      if (fields.size() != 1 || !parse_number(fields[0], value) || value <= 0) {
        throw ParseError(source, line_no, "expected a positive node count header");
      }
      n = static_cast<Index>(value);
      w = Matrix::Zero(n, n);
      continue;
    }
    long long u = 0;
    long long v = 0;
    double weight = 0.0;
    if (fields.size() != 3 || !parse_number(fields[0], u) || !parse_number(fields[1], v) ||
        !parse_number(fields[2], weight)) {
      throw ParseError(source, line_no, "expected \"u v w\"");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError(source, line_no, "node index out of range [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw ParseError(source, line_no, "self-loop edges are not allowed");
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw ParseError(source, line_no, "edge weight must be positive");
    }
    if (w(u, v) != 0.0) throw ParseError(source, line_no, "duplicate edge");
    w(u, v) = weight;
    w(v, u) = weight;
  }
  if (n < 0) throw ParseError(source, std::max<std::size_t>(line_no, 1), "missing node count header");
  return WeightedGraph(std::move(w));
}

WeightedGraph load_graph(std::istream& in, const std::string& source) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), source);
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return load_graph(in, path);
}

std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  return out.str();
}

WeightedGraph circulant_regular(Index n, Index d) {
  require(n > 0 && d >= 0 && d < n, "circulant graph needs 0 <= d < n");
  require(d % 2 == 0 || n % 2 == 0, "odd degree requires an even node count");
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 1; k <= d / 2; ++k) {
      w(i, (i + k) % n) = 1.0;
      w((i + k) % n, i) = 1.0;
    }
    if (d % 2 == 1) {
      w(i, (i + n / 2) % n) = 1.0;
      w((i + n / 2) % n, i) = 1.0;
    }
  }
  return WeightedGraph(std::move(w));
}

WeightedGraph complete_graph(Index n) {
  Matrix w = Matrix::Ones(n, n);
  w.diagonal().setZero();
  return WeightedGraph(std::move(w));
}

WeightedGraph cycle_graph(Index n) {
  require(n >= 3, "cycle needs at least three nodes");
  return circulant_regular(n, 2);
}

WeightedGraph path_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph star_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 1; i < n; ++i) edges.push_back({0, i, 1.0});
  return WeightedGraph::from_edges(n, edges);
}

}  // namespace mcnet
