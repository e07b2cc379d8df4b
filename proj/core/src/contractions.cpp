#include "triad/contractions.hpp"

#include <algorithm>
#include <cctype>

namespace triad {

namespace {

void require_equal_factors(const BipartiteOperator& g, const char* what) {
  if (g.dim_a() != g.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " requires dim_a == dim_b");
  }
}

}  // namespace

BipartiteOperator partial_transpose(const BipartiteOperator& g) {
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out(g.size(), g.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j)
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < m; ++q) out(i * m + j, p * m + q) = g(i, q, p, j);
  return g.with_matrix(std::move(out));
}

BipartiteOperator left_transpose(const BipartiteOperator& g) {
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out(g.size(), g.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j)
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < m; ++q) out(i * m + j, p * m + q) = g(p, j, i, q);
  return g.with_matrix(std::move(out));
}

BipartiteOperator realign(const BipartiteOperator& g) {
  require_equal_factors(g, "realign");
  return g.with_matrix(realign_rectangular(g));
}

Matrix realign_rectangular(const BipartiteOperator& g) {
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out(k * k, m * m);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j)
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < m; ++q) out(i * k + p, j * m + q) = g(i, j, p, q);
  return out;
}

BipartiteOperator flip(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "flip needs k >= 1");
  Matrix f = Matrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) f(i * k + j, j * k + i) = 1.0;
  return BipartiteOperator(k, k, std::move(f));
}

BipartiteOperator star_product(const BipartiteOperator& g, const BipartiteOperator& d) {
  if (g.dim_b() != d.dim_a()) {
    throw Error(ErrorCode::DimensionMismatch, "star_product: inner dimensions differ");
  }
  const int m = g.dim_a(), k = g.dim_b(), s = d.dim_b();
  // The sandwich (Id (x) u^t (x) Id)(g (x) d)(Id (x) u (x) Id) evaluated
  // entrywise: u pairs the inner row indices and the inner column indices.
  Matrix out = Matrix::Zero(m * s, m * s);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c)
      for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
          const Complex gx = g(a, x, c, y);
          if (gx == Complex(0.0)) continue;
          for (int b = 0; b < s; ++b)
            for (int e = 0; e < s; ++e) out(a * s + b, c * s + e) += gx * d(x, b, y, e);
        }
  return BipartiteOperator(m, s, std::move(out));
}

SlotPermutation::SlotPermutation(std::array<int, 4> images) : images_(images) {
  std::array<int, 4> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 4>{0, 1, 2, 3}) {
    throw Error(ErrorCode::InvalidArgument, "slot permutation must be a bijection of {0,1,2,3}");
  }
}

SlotPermutation SlotPermutation::transposition(int a, int b) {
  if (a < 1 || a > 4 || b < 1 || b > 4) {
    throw Error(ErrorCode::InvalidArgument, "transposition slots are 1-based in [1,4]");
  }
  std::array<int, 4> img{0, 1, 2, 3};
  std::swap(img[static_cast<std::size_t>(a - 1)], img[static_cast<std::size_t>(b - 1)]);
  return SlotPermutation(img);
}

SlotPermutation SlotPermutation::parse(const std::string& cycles) {
  std::array<int, 4> img{0, 1, 2, 3};
  std::string text;
  for (char c : cycles)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty() || text == "e" || text == "()" || text == "id") return SlotPermutation();
  std::size_t pos = 0;
  SlotPermutation result;
  while (pos < text.size()) {
    if (text[pos] != '(') throw Error(ErrorCode::ParseError, "expected '(' in " + cycles);
    std::size_t close = text.find(')', pos);
    if (close == std::string::npos) throw Error(ErrorCode::ParseError, "unbalanced cycle in " + cycles);
    std::vector<int> cycle;
    for (std::size_t i = pos + 1; i < close; ++i) {
      if (text[i] < '1' || text[i] > '4') throw Error(ErrorCode::ParseError, "slot must be 1-4 in " + cycles);
      cycle.push_back(text[i] - '1');
    }
    std::array<int, 4> step{0, 1, 2, 3};
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      step[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
    // Cycles written left to right compose right to left.
    result = result.compose(SlotPermutation(step));
    pos = close + 1;
  }
  (void)img;
  return result;
}

std::vector<SlotPermutation> SlotPermutation::all() {
  std::vector<SlotPermutation> out;
  std::array<int, 4> img{0, 1, 2, 3};
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

SlotPermutation SlotPermutation::compose(const SlotPermutation& other) const {
  std::array<int, 4> img{};
  for (std::size_t s = 0; s < 4; ++s) img[s] = images_[static_cast<std::size_t>(other.images_[s])];
  return SlotPermutation(img);
}

std::string SlotPermutation::to_string() const {
  std::string out;
  std::array<bool, 4> seen{};
  for (int start = 0; start < 4; ++start) {
    if (seen[static_cast<std::size_t>(start)] || images_[static_cast<std::size_t>(start)] == start) {
      seen[static_cast<std::size_t>(start)] = true;
      continue;
    }
    out.push_back('(');
    int s = start;
    while (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      out.push_back(static_cast<char>('1' + s));
      s = images_[static_cast<std::size_t>(s)];
    }
    out.push_back(')');
  }
  return out.empty() ? "e" : out;
}

BipartiteOperator contraction_by_permutation(const SlotPermutation& sigma,
                                             const BipartiteOperator& g) {
  const std::array<int, 4> dims{g.dim_a(), g.dim_a(), g.dim_b(), g.dim_b()};
  std::array<int, 4> out_dims{};
  for (std::size_t s = 0; s < 4; ++s) out_dims[s] = dims[static_cast<std::size_t>(sigma[static_cast<int>(s)])];
  if (out_dims[0] != out_dims[1] || out_dims[2] != out_dims[3]) {
    throw Error(ErrorCode::DimensionMismatch,
                "contraction " + sigma.to_string() + " mixes factors of different dimension");
  }
  const int ka = out_dims[0], kb = out_dims[2];
  Matrix out(ka * kb, ka * kb);
  std::array<int, 4> j{};
  std::array<int, 4> i{};
  for (j[0] = 0; j[0] < out_dims[0]; ++j[0])
    for (j[1] = 0; j[1] < out_dims[1]; ++j[1])
      for (j[2] = 0; j[2] < out_dims[2]; ++j[2])
        for (j[3] = 0; j[3] < out_dims[3]; ++j[3]) {
          for (std::size_t s = 0; s < 4; ++s) i[static_cast<std::size_t>(sigma[static_cast<int>(s)])] = j[s];
          // Slots: 0 = row A, 1 = column A, 2 = row B, 3 = column B.
          out(j[0] * kb + j[2], j[1] * kb + j[3]) = g(i[0], i[2], i[1], i[3]);
        }
  return BipartiteOperator(ka, kb, std::move(out));
}

Matrix reshape_to_matrix(const Vector& v, int k) {
  if (v.size() != static_cast<Eigen::Index>(k) * k) {
    throw Error(ErrorCode::DimensionMismatch, "reshape_to_matrix: vector length must be k^2");
  }
  Matrix out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = v(i * k + j);
  return out;
}

Vector reshape_to_vector(const Matrix& m) {
  Vector out(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

std::vector<IdentityCheck> realignment_identities(const IdentityInputs& in) {
  const BipartiteOperator& g = in.gamma;
  const BipartiteOperator& d = in.delta;
  require_equal_factors(g, "realignment identities");
  const int k = g.dim_a();
  if (d.dim_a() != k || d.dim_b() != k) {
    throw Error(ErrorCode::DimensionMismatch, "realignment identities: delta has different shape");
  }
  const Matrix F = flip(k).matrix();
  auto R = [](const Matrix& x, int kk) { return realign(BipartiteOperator(kk, kk, x)).matrix(); };
  auto PT = [](const Matrix& x, int kk) { return partial_transpose(BipartiteOperator(kk, kk, x)).matrix(); };

  std::vector<IdentityCheck> out;
  out.reserve(9);

  {
    Matrix vw = in.v * in.w.transpose();
    Matrix lhs = R(vw, k);
    Matrix rhs = kron(reshape_to_matrix(in.v, k), reshape_to_matrix(in.w, k));
    out.push_back({"R(vw^t) = V(x)W", (lhs - rhs).norm()});
  }
  out.push_back({"R(R(g)) = g", (R(R(g.matrix(), k), k) - g.matrix()).norm()});
  {
    const Matrix& V = in.v_op.matrix();
    const Matrix& W = in.w_op.matrix();
    const Matrix& M = in.m_op.matrix();
    const Matrix& N = in.n_op.matrix();
    Matrix lhs = R(kron(V, W) * g.matrix() * kron(M, N), k);
    Matrix rhs = kron(V, M.transpose()) * R(g.matrix(), k) * kron(W.transpose(), N);
    out.push_back({"R((V(x)W)g(M(x)N)) = (V(x)M^t)R(g)(W^t(x)N)", (lhs - rhs).norm()});
  }
  const Matrix gpt = PT(g.matrix(), k);
  const Matrix rg = R(g.matrix(), k);
  out.push_back({"R(gF)F = g^Gamma", (R(g.matrix() * F, k) * F - gpt).norm()});
  out.push_back({"R(g^Gamma) = R(g)F", (R(gpt, k) - rg * F).norm()});
  out.push_back({"R(gF) = R(g)^Gamma", (R(g.matrix() * F, k) - PT(rg, k)).norm()});
  out.push_back({"R(g^Gamma)^Gamma = gF", (PT(R(gpt, k), k) - g.matrix() * F).norm()});
  out.push_back({"R(g*d) = R(g)R(d)",
                 (R(star_product(g, d).matrix(), k) - rg * R(d.matrix(), k)).norm()});
  out.push_back({"R(F conj(g) F) = R(g)*", (R(F * g.matrix().conjugate() * F, k) - rg.adjoint()).norm()});
  return out;
}

}  // namespace triad
