#include "triad/io.hpp"

#include <istream>
#include <iterator>

namespace triad {

namespace {

Json real_vector(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json real_matrix(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(real_vector(m.row(i).transpose()));
  return rows;
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

int positive_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) parse_fail(std::string("missing integer field ") + key);
  const long long v = j.at(key).get<long long>();
  if (v < 1 || v > 1 << 15) parse_fail(std::string("field ") + key + " out of range");
  return static_cast<int>(v);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  return Json{{"re", real_matrix(m.real())}, {"im", real_matrix(m.imag())}};
}

Matrix matrix_from_json(const Json& re, const Json& im) {
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) parse_fail("re/im must be arrays of equal length");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(re.at(0).size());
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& rr = re.at(static_cast<std::size_t>(i));
    const Json& ir = im.at(static_cast<std::size_t>(i));
    if (!rr.is_array() || !ir.is_array() || static_cast<Eigen::Index>(rr.size()) != cols ||
        static_cast<Eigen::Index>(ir.size()) != cols) {
      parse_fail("ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& x = rr.at(static_cast<std::size_t>(c));
      const Json& y = ir.at(static_cast<std::size_t>(c));
      if (!x.is_number() || !y.is_number()) parse_fail("matrix entries must be numbers");
      out(i, c) = Complex(x.get<double>(), y.get<double>());
    }
  }
  return out;
}

void to_json(Json& j, const LocalOperator& a) {
  j = matrix_to_json(a.matrix());
  j["dim"] = a.dim();
}

void to_json(Json& j, const BipartiteOperator& a) {
  j = matrix_to_json(a.matrix());
  j["dim_a"] = a.dim_a();
  j["dim_b"] = a.dim_b();
}

void to_json(Json& j, const SpectralData& s) {
  j = Json{{"eigenvalues", real_vector(s.eigenvalues)}, {"eigenvectors", matrix_to_json(s.eigenvectors)}};
}

void to_json(Json& j, const ProductTerm& t) { j = Json{{"weight", t.weight}, {"a", t.a}, {"b", t.b}}; }

void to_json(Json& j, const SeparableSample& s) {
  j = Json{{"state", s.state}, {"decomposition", s.decomposition}};
}

void to_json(Json& j, const TriadClassification& c) {
  j = Json{{"is_state", c.is_state},
           {"ppt", c.ppt},
           {"spc", c.spc},
           {"invariant", c.invariant},
           {"ccnr_value", c.ccnr_value},
           {"trace", c.trace},
           {"min_eig_state", c.min_eig_state},
           {"min_eig_partial_transpose", c.min_eig_partial_transpose},
           {"min_eig_realigned_pt", c.min_eig_realigned_pt},
           {"realigned_pt_hermiticity", c.realigned_pt_hermiticity},
           {"invariance_residual", c.invariance_residual}};
}

void to_json(Json& j, const BoundReport& b) {
  j = Json{{"kind", b.kind},
           {"op_norm_state", b.op_norm_state},
           {"op_norm_a", b.op_norm_a},
           {"op_norm_b", b.op_norm_b},
           {"op_norm_realign", b.op_norm_realign},
           {"lhs", b.lhs},
           {"rhs", b.rhs},
           {"margin", b.margin},
           {"bound_holds", b.bound_holds}};
}

void to_json(Json& j, const PptPairReport& p) {
  j = Json{{"both_ppt", p.both_ppt}, {"realign_distance", p.realign_distance}, {"relative_distance", p.relative_distance}};
}

void to_json(Json& j, const SchmidtDecomposition& s) {
  j = Json{{"coefficients", real_vector(s.coefficients)}, {"left_ops", s.left_ops}, {"right_ops", s.right_ops}};
}

void to_json(Json& j, const FilterIteration& it) {
  j = Json{{"iteration", it.iteration},
           {"residual_a", it.residual_a},
           {"residual_b", it.residual_b},
           {"potential", it.potential}};
}

void to_json(Json& j, const FilterResult& r) {
  j = Json{{"mode", std::string(to_string(r.mode))},
           {"filter_a", r.filter_a},
           {"filter_b", r.filter_b},
           {"normal_form", r.normal_form},
           {"marginal_residual_a", r.marginal_residual_a},
           {"marginal_residual_b", r.marginal_residual_b},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"shape_residual", r.shape_residual},
           {"max_potential_increase", r.max_potential_increase},
           {"schmidt_of_normal_form", r.schmidt_of_normal_form},
           {"log", r.log}};
}

void to_json(Json& j, const StochasticityReport& r) {
  j = Json{{"forward_residual", r.forward_residual},
           {"adjoint_residual", r.adjoint_residual},
           {"doubly_stochastic", r.doubly_stochastic}};
}

void to_json(Json& j, const DecomposabilityWitness& w) {
  j = Json{{"x", w.x}, {"y", w.y}, {"rank_x", w.rank_x}, {"rank_y", w.rank_y}, {"overlap", w.overlap}};
}

void to_json(Json& j, const ProbeReport& r) {
  j = Json{{"verdict", std::string(to_string(r.verdict))}, {"probes", r.probes}};
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
}

void to_json(Json& j, const PsdEigenvector& p) {
  j = Json{{"found", p.found},
           {"x", p.x},
           {"eigenvalue", p.eigenvalue},
           {"rank", p.rank},
           {"top_positive_definite", p.top_positive_definite},
           {"power_iterations", p.power_iterations},
           {"dense_fallback", p.dense_fallback}};
}

void to_json(Json& j, const SplitCertificate& c) {
  j = Json{{"x", c.x},
           {"eigenvalue", c.eigenvalue},
           {"eigen_residual", c.eigen_residual},
           {"proj_v", c.proj_v},
           {"proj_w", c.proj_w},
           {"proj_v_perp", c.proj_v_perp},
           {"proj_w_perp", c.proj_w_perp},
           {"residual", c.residual},
           {"cross_residual", c.cross_residual}};
}

void to_json(Json& j, const DecompositionTree& t) {
  j = Json{{"state", t.state},
           {"embed_a", matrix_to_json(t.embed_a)},
           {"embed_b", matrix_to_json(t.embed_b)},
           {"depth", t.depth},
           {"status", std::string(to_string(t.status))}};
  j["certificate"] = t.certificate ? Json(*t.certificate) : Json(nullptr);
  j["separable_decomposition"] = t.separable_decomposition ? Json(*t.separable_decomposition) : Json(nullptr);
  j["children"] = t.children;
}

void to_json(Json& j, const EqualSchmidtCertificate& c) {
  j = Json{{"applies", c.applies}, {"coefficient_spread", c.coefficient_spread}, {"coefficient_count", c.coefficient_count}};
  j["certificate"] = c.certificate ? Json(*c.certificate) : Json(nullptr);
}

void to_json(Json& j, const RankBoundReport& r) {
  j = Json{{"rank", r.rank}, {"rank_a", r.rank_a}, {"rank_b", r.rank_b}, {"applies", r.applies}, {"bound_holds", r.bound_holds}};
}

void to_json(Json& j, const FailureReport& f) {
  j = Json{{"step", f.step}, {"message", f.message}, {"residuals", f.residuals}};
}

void to_json(Json& j, const ExtractionResult& r) {
  j = Json{{"ok", r.ok}, {"decomposition", r.decomposition}, {"reconstruction_residual", r.reconstruction_residual}};
  j["failure"] = r.failure ? Json(*r.failure) : Json(nullptr);
}

LocalOperator local_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) parse_fail("operator needs re and im");
  const int n = positive_int(j, "dim");
  Matrix m = matrix_from_json(j.at("re"), j.at("im"));
  if (m.rows() != n || m.cols() != n) parse_fail("operator entries do not match dim");
  return LocalOperator(std::move(m));
}

BipartiteOperator bipartite_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) parse_fail("operator needs re and im");
  const int ka = positive_int(j, "dim_a");
  const int kb = positive_int(j, "dim_b");
  Matrix m = matrix_from_json(j.at("re"), j.at("im"));
  if (m.rows() != ka * kb || m.cols() != ka * kb) parse_fail("operator entries do not match dim_a * dim_b");
  return BipartiteOperator(ka, kb, std::move(m));
}

BipartiteOperator parse_bipartite(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(e.what());
  }
  // Reports that carry a state (generate --class separable) are accepted too.
  if (j.is_object() && !j.contains("re") && j.contains("state")) return bipartite_from_json(j.at("state"));
  return bipartite_from_json(j);
}

BipartiteOperator read_bipartite(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_bipartite(text);
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace triad
