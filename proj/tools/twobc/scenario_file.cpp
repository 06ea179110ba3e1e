#include "scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace twobc::cli {

namespace {

std::string position_prefix(const std::string& source, std::size_t line, std::size_t column) {
  if (line == 0) return source + ": ";
  return source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": ";
}

std::string describe(const Verdict& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : v.checks) {
    if (c.passed) continue;
    os << (first ? "" : ", ") << c.name << " (violation " << c.violation << ", tolerance " << c.tolerance << ")";
    first = false;
  }
  return os.str();
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  template <class E = ScenarioError>
  [[noreturn]] void fail(const YAML::Mark& mark, const std::string& message) const {
    if (mark.is_null()) throw E(source_, 0, 0, message);
    throw E(source_, static_cast<std::size_t>(mark.line) + 1, static_cast<std::size_t>(mark.column) + 1, message);
  }

  Scenario read(const YAML::Node& root);

 private:
  void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                  std::string_view where) const;
  void require_map(const YAML::Node& n, std::string_view what) const;
  void require_seq(const YAML::Node& n, std::string_view what) const;

  double number(const YAML::Node& n, std::string_view what) const;
  std::uint64_t unsigned_value(const YAML::Node& n, std::string_view what) const;
  std::size_t count(const YAML::Node& n, std::string_view what) const {
    return static_cast<std::size_t>(unsigned_value(n, what));
  }
  Complex complex_entry(const YAML::Node& n) const;
  std::string name(const YAML::Node& n, std::string_view what) const;

  const OperatorDef& resolve(const YAML::Node& ref) const;
  const OperatorDef& resolve_kind(const YAML::Node& ref, std::initializer_list<OperatorKind> kinds,
                                  std::string_view role) const;

  void read_layout(const YAML::Node& n);
  void read_operators(const YAML::Node& n);
  Matrix construct(const YAML::Node& key, const YAML::Node& def, OperatorKind kind);
  void read_schedule(const YAML::Node& n);
  void read_boundaries(const YAML::Node& n);
  void read_slots(const YAML::Node& n);
  void read_preferred_bases(const YAML::Node& n);
  void read_parameters(const YAML::Node& n);
  void check_total_dim(const YAML::Node& ref, const OperatorDef& op, std::string_view role) const;

  std::string source_;
  Scenario sc_;
};

void Reader::check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                        std::string_view where) const {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(kv.first.Mark(), "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

void Reader::require_map(const YAML::Node& n, std::string_view what) const {
  if (!n.IsMap()) fail(n.Mark(), std::string(what) + " must be a mapping");
}

void Reader::require_seq(const YAML::Node& n, std::string_view what) const {
  if (!n.IsSequence()) fail(n.Mark(), std::string(what) + " must be a sequence");
}

double Reader::number(const YAML::Node& n, std::string_view what) const {
  if (!n.IsScalar()) fail(n.Mark(), "expected a number for " + std::string(what));
  try {
    return n.as<double>();
  } catch (const YAML::BadConversion&) {
    fail(n.Mark(), "expected a number for " + std::string(what) + ", got '" + n.Scalar() + "'");
  }
}

std::uint64_t Reader::unsigned_value(const YAML::Node& n, std::string_view what) const {
  if (!n.IsScalar()) fail(n.Mark(), "expected a non-negative integer for " + std::string(what));
  const std::string& s = n.Scalar();
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(n.Mark(), "expected a non-negative integer for " + std::string(what) + ", got '" + s + "'");
  }
  return v;
}

Complex Reader::complex_entry(const YAML::Node& n) const {
  if (n.IsSequence()) {
    if (n.size() != 2) fail(n.Mark(), "complex entries are written [re, im]");
    return {number(n[0], "real part"), number(n[1], "imaginary part")};
  }
  return {number(n, "matrix entry"), 0.0};
}

std::string Reader::name(const YAML::Node& n, std::string_view what) const {
  if (!n.IsScalar()) fail(n.Mark(), std::string(what) + " must be an operator name");
  return n.Scalar();
}

const OperatorDef& Reader::resolve(const YAML::Node& ref) const {
  const auto key = name(ref, "reference");
  const OperatorDef* op = sc_.find(key);
  if (op == nullptr) fail<UnresolvedReference>(ref.Mark(), "unresolved reference to operator '" + key + "'");
  return *op;
}

const OperatorDef& Reader::resolve_kind(const YAML::Node& ref, std::initializer_list<OperatorKind> kinds,
                                        std::string_view role) const {
  const OperatorDef& op = resolve(ref);
  if (std::find(kinds.begin(), kinds.end(), op.kind) == kinds.end()) {
    std::string wanted;
    for (auto k : kinds) wanted += (wanted.empty() ? "" : " or ") + std::string(to_string(k));
    fail(ref.Mark(), std::string(role) + " needs a " + wanted + ", but '" + op.name + "' is a " +
                         std::string(to_string(op.kind)));
  }
  return op;
}

void Reader::check_total_dim(const YAML::Node& ref, const OperatorDef& op, std::string_view role) const {
  if (!sc_.layout) return;
  const auto dim = static_cast<std::size_t>(op.value.rows());
  if (dim != sc_.layout->total()) {
    fail<ScenarioValidationError>(ref.Mark(), std::string(role) + " '" + op.name + "' has dimension " +
                                                  std::to_string(dim) + " but the layout has total dimension " +
                                                  std::to_string(sc_.layout->total()));
  }
}

Scenario Reader::read(const YAML::Node& root) {
  if (!root.IsMap()) fail(root.IsNull() ? YAML::Mark::null_mark() : root.Mark(), "scenario must be a mapping");
  check_keys(root,
             {"version", "layout", "operators", "schedule", "boundaries", "slots", "preferred_bases", "parameters"},
             "scenario");

  const auto version = root["version"];
  if (!version) fail(root.Mark(), "missing required key 'version'");
  if (unsigned_value(version, "version") != static_cast<std::uint64_t>(kScenarioVersion)) {
    fail(version.Mark(), "unsupported scenario version " + version.Scalar() + " (expected " +
                             std::to_string(kScenarioVersion) + ")");
  }
  sc_.version = kScenarioVersion;

  if (auto n = root["layout"]) read_layout(n);
  if (auto n = root["operators"]) read_operators(n);
  if (auto n = root["schedule"]) read_schedule(n);
  if (auto n = root["boundaries"]) read_boundaries(n);
  if (auto n = root["slots"]) read_slots(n);
  if (auto n = root["preferred_bases"]) read_preferred_bases(n);
  if (auto n = root["parameters"]) read_parameters(n);
  return std::move(sc_);
}

void Reader::read_layout(const YAML::Node& n) {
  require_seq(n, "layout");
  if (n.size() == 0) fail(n.Mark(), "layout needs at least one subsystem");
  std::vector<std::size_t> dims;
  for (const auto& d : n) {
    const auto v = count(d, "subsystem dimension");
    if (v == 0) fail(d.Mark(), "subsystem dimensions must be positive");
    dims.push_back(v);
  }
  sc_.layout = SubsystemLayout(std::move(dims));
}

void Reader::read_operators(const YAML::Node& n) {
  require_map(n, "operators");
  for (const auto& kv : n) {
    const auto op_name = name(kv.first, "operator key");
    if (sc_.find(op_name) != nullptr) fail(kv.first.Mark(), "operator '" + op_name + "' is defined twice");
    const YAML::Node& def = kv.second;
    require_map(def, "operator '" + op_name + "'");

    const auto kind_node = def["kind"];
    if (!kind_node) fail(kv.first.Mark(), "operator '" + op_name + "' needs a 'kind'");
    const auto kind_text = name(kind_node, "kind");
    OperatorKind kind{};
    bool known = false;
    for (auto k : {OperatorKind::unitary, OperatorKind::projector, OperatorKind::density, OperatorKind::state}) {
      if (kind_text == to_string(k)) {
        kind = k;
        known = true;
      }
    }
    if (!known) fail(kind_node.Mark(), "unknown operator kind '" + kind_text + "'");

    Matrix value = construct(kv.first, def, kind);
    const Verdict verdict = kind == OperatorKind::state ? validate_state(Vector(value.col(0))) : validate(value, kind);
    if (!verdict.passed()) {
      fail<ScenarioValidationError>(kv.first.Mark(), "operator '" + op_name + "' is not a valid " +
                                                         std::string(to_string(kind)) + ": " + describe(verdict));
    }
    sc_.operators.push_back(OperatorDef{op_name, kind, std::move(value)});
  }
}

Matrix Reader::construct(const YAML::Node& key, const YAML::Node& def, OperatorKind kind) {
  check_keys(def,
             {"kind", "matrix", "vector", "identity", "beam_splitter", "basis_state", "outer", "maximally_mixed",
              "tensor", "product", "adjoint"},
             "operator definition");

  std::string ctor;
  YAML::Node arg;
  for (const auto& kv : def) {
    const auto k = kv.first.as<std::string>();
    if (k == "kind") continue;
    if (!ctor.empty()) fail(kv.first.Mark(), "operator has more than one constructor ('" + ctor + "', '" + k + "')");
    ctor = k;
    arg = kv.second;
  }
  if (ctor.empty()) {
    fail(key.Mark(), "operator needs one constructor: matrix, vector, identity, beam_splitter, basis_state, "
                     "outer, maximally_mixed, tensor, product or adjoint");
  }

  const bool state = kind == OperatorKind::state;
  auto state_only = [&](bool allowed) {
    if (allowed != state) {
      fail(arg.Mark(), "constructor '" + ctor + "' cannot build a " + std::string(to_string(kind)));
    }
  };

  if (ctor == "matrix") {
    state_only(false);
    require_seq(arg, "matrix");
    const auto rows = static_cast<Eigen::Index>(arg.size());
    if (rows == 0) fail(arg.Mark(), "matrix must not be empty");
    Matrix m;
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto row = arg[static_cast<std::size_t>(r)];
      require_seq(row, "matrix row");
      if (r == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
      if (static_cast<Eigen::Index>(row.size()) != m.cols()) fail(row.Mark(), "matrix rows differ in length");
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  if (ctor == "vector") {
    state_only(true);
    require_seq(arg, "vector");
    if (arg.size() == 0) fail(arg.Mark(), "vector must not be empty");
    Matrix v(static_cast<Eigen::Index>(arg.size()), 1);
    for (std::size_t i = 0; i < arg.size(); ++i) v(static_cast<Eigen::Index>(i), 0) = complex_entry(arg[i]);
    return v;
  }
  if (ctor == "identity") {
    state_only(false);
    const auto d = static_cast<Eigen::Index>(count(arg, "identity dimension"));
    if (d == 0) fail(arg.Mark(), "dimension must be positive");
    return Matrix::Identity(d, d);
  }
  if (ctor == "maximally_mixed") {
    state_only(false);
    const auto d = count(arg, "dimension");
    if (d == 0) fail(arg.Mark(), "dimension must be positive");
    return DensityOperator::maximally_mixed(d).matrix();
  }
  if (ctor == "beam_splitter") {
    state_only(false);
    return beam_splitter(number(arg, "beam splitter angle")).matrix();
  }
  if (ctor == "basis_state") {
    if (!arg.IsSequence() || arg.size() != 2) fail(arg.Mark(), "basis_state is written [dimension, index]");
    const auto d = count(arg[0], "dimension");
    const auto i = count(arg[1], "index");
    if (i >= d) fail(arg[1].Mark(), "basis index " + std::to_string(i) + " out of range for dimension " +
                                        std::to_string(d));
    const auto ket = StateVector::basis(d, i);
    return state ? Matrix(ket.amplitudes()) : ket.outer();
  }
  if (ctor == "outer") {
    state_only(false);
    const auto& psi = resolve_kind(arg, {OperatorKind::state}, "outer");
    return psi.value * psi.value.adjoint();
  }
  if (ctor == "adjoint") {
    state_only(false);
    const auto& op = resolve(arg);
    if (op.kind == OperatorKind::state) fail(arg.Mark(), "adjoint needs an operator, not a state");
    return op.value.adjoint();
  }
  // tensor / product over a list of references
  require_seq(arg, ctor);
  if (arg.size() == 0) fail(arg.Mark(), ctor + " needs at least one factor");
  Matrix acc;
  for (std::size_t i = 0; i < arg.size(); ++i) {
    const auto& f = resolve(arg[i]);
    if ((f.kind == OperatorKind::state) != state || (ctor == "product" && state)) {
      fail(arg[i].Mark(), "'" + f.name + "' cannot be a factor of this " + ctor);
    }
    if (i == 0) {
      acc = f.value;
    } else if (ctor == "tensor") {
      acc = kron(acc, f.value);
    } else {
      if (f.value.rows() != acc.cols()) {
        fail<ScenarioValidationError>(arg[i].Mark(), "product factor '" + f.name + "' has mismatched dimension");
      }
      acc = acc * f.value;
    }
  }
  return acc;
}

void Reader::read_schedule(const YAML::Node& n) {
  require_seq(n, "schedule");
  if (!sc_.layout) fail(n.Mark(), "a schedule needs a 'layout'");
  const auto& layout = *sc_.layout;
  for (const auto& interval : n) {
    std::vector<ScheduledOp> ops;
    if (!interval.IsNull()) {
      require_seq(interval, "schedule interval");
      for (const auto& entry : interval) {
        require_map(entry, "schedule operation");
        check_keys(entry, {"op", "on"}, "schedule operation");
        if (!entry["op"]) fail(entry.Mark(), "schedule operation needs 'op'");
        const auto& op = resolve_kind(entry["op"], {OperatorKind::unitary}, "schedule operation");
        const auto on = entry["on"];
        if (!on) fail(entry.Mark(), "schedule operation '" + op.name + "' is not tagged with 'on' subsystems");
        std::vector<std::size_t> subs;
        if (on.IsScalar()) {
          subs.push_back(count(on, "subsystem index"));
        } else {
          require_seq(on, "'on'");
          for (const auto& s : on) subs.push_back(count(s, "subsystem index"));
        }
        if (subs.empty()) fail(on.Mark(), "schedule operation '" + op.name + "' is not tagged with any subsystem");
        std::set<std::size_t> seen;
        std::size_t dim = 1;
        for (auto s : subs) {
          if (s >= layout.size()) fail(on.Mark(), "subsystem index " + std::to_string(s) + " out of range");
          if (!seen.insert(s).second) fail(on.Mark(), "subsystem " + std::to_string(s) + " listed twice");
          dim *= layout.dim(s);
        }
        if (dim != static_cast<std::size_t>(op.value.rows())) {
          fail<ScenarioValidationError>(on.Mark(), "operation '" + op.name + "' has dimension " +
                                                       std::to_string(op.value.rows()) +
                                                       " but its subsystems span " + std::to_string(dim));
        }
        ops.push_back(ScheduledOp{op.name, std::move(subs)});
      }
    }
    sc_.schedule.push_back(std::move(ops));
  }
}

void Reader::read_boundaries(const YAML::Node& n) {
  require_map(n, "boundaries");
  check_keys(n, {"rho_i", "rho_f", "p_a", "p_b", "rho_p", "rho_m"}, "boundaries");
  for (const auto& kv : n) {
    const auto role = kv.first.as<std::string>();
    const bool projector_role = role == "p_a" || role == "p_b";
    const auto& op = projector_role ? resolve_kind(kv.second, {OperatorKind::projector}, role)
                                    : resolve_kind(kv.second, {OperatorKind::density, OperatorKind::state}, role);
    check_total_dim(kv.second, op, role);
    sc_.boundaries[role] = op.name;
  }
}

void Reader::read_slots(const YAML::Node& n) {
  require_seq(n, "slots");
  for (std::size_t j = 0; j < n.size(); ++j) {
    const auto entry = n[j];
    SlotDef slot;
    if (entry.IsScalar()) {
      const auto& u = resolve_kind(entry, {OperatorKind::unitary}, "slot basis");
      check_total_dim(entry, u, "slot basis");
      slot.basis = u.name;
    } else {
      require_seq(entry, "slot");
      if (entry.size() == 0) fail(entry.Mark(), "slot needs at least one projector");
      for (const auto& p : entry) {
        const auto& op = resolve_kind(p, {OperatorKind::projector}, "slot");
        check_total_dim(p, op, "slot projector");
        slot.projectors.push_back(op.name);
      }
    }
    sc_.slots.push_back(slot);
    try {
      (void)sc_.history_slots();
    } catch (const Error& e) {
      sc_.slots.pop_back();
      fail<ScenarioValidationError>(entry.Mark(), "slot " + std::to_string(j) + ": " + e.what());
    }
  }
}

void Reader::read_preferred_bases(const YAML::Node& n) {
  require_seq(n, "preferred_bases");
  if (!sc_.layout) fail(n.Mark(), "preferred_bases need a 'layout'");
  if (n.size() != sc_.layout->size()) {
    fail<ScenarioValidationError>(n.Mark(), "preferred_bases lists " + std::to_string(n.size()) +
                                                " bases for " + std::to_string(sc_.layout->size()) + " subsystems");
  }
  for (std::size_t s = 0; s < n.size(); ++s) {
    const auto& u = resolve_kind(n[s], {OperatorKind::unitary}, "preferred basis");
    if (static_cast<std::size_t>(u.value.rows()) != sc_.layout->dim(s)) {
      fail<ScenarioValidationError>(n[s].Mark(), "preferred basis '" + u.name + "' does not match subsystem " +
                                                     std::to_string(s));
    }
    sc_.preferred_bases.push_back(u.name);
  }
}

void Reader::read_parameters(const YAML::Node& n) {
  require_map(n, "parameters");
  check_keys(n, {"theta", "phi", "mu", "runs", "seed", "dims", "time", "cap"}, "parameters");
  auto& p = sc_.parameters;
  if (auto v = n["theta"]) p.theta = number(v, "theta");
  if (auto v = n["phi"]) p.phi = number(v, "phi");
  if (auto v = n["mu"]) {
    require_seq(v, "mu");
    std::vector<Complex> mu;
    for (const auto& z : v) mu.push_back(complex_entry(z));
    p.mu = std::move(mu);
  }
  if (auto v = n["runs"]) p.runs = count(v, "runs");
  if (auto v = n["seed"]) p.seed = unsigned_value(v, "seed");
  if (auto v = n["time"]) p.time = count(v, "time");
  if (auto v = n["cap"]) p.cap = count(v, "cap");
  if (auto v = n["dims"]) {
    require_map(v, "dims");
    check_keys(v, {"system", "m", "n"}, "dims");
    InstrumentDims d;
    if (auto x = v["system"]) d.system = count(x, "system");
    if (auto x = v["m"]) d.m = count(x, "m");
    if (auto x = v["n"]) d.n = count(x, "n");
    p.dims = d;
  }
}

bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

void emit_entry(YAML::Emitter& out, const Complex& z) {
  if (z.imag() == 0.0) {
    out << z.real();
  } else {
    out << YAML::Flow << YAML::BeginSeq << z.real() << z.imag() << YAML::EndSeq;
  }
}

}  // namespace

ScenarioError::ScenarioError(const std::string& source, std::size_t line, std::size_t column,
                             const std::string& message)
    : Error(position_prefix(source, line, column) + message), line_(line), column_(column) {}

const OperatorDef* Scenario::find(std::string_view name) const {
  for (const auto& op : operators) {
    if (op.name == name) return &op;
  }
  return nullptr;
}

namespace {

const OperatorDef& lookup(const Scenario& sc, std::string_view name) {
  const auto* op = sc.find(name);
  if (op == nullptr) throw InvalidArgument("scenario has no operator named '" + std::string(name) + "'");
  return *op;
}

}  // namespace

UnitaryOperator Scenario::unitary(std::string_view name) const { return UnitaryOperator(lookup(*this, name).value); }

Projector Scenario::projector(std::string_view name) const { return Projector(lookup(*this, name).value); }

DensityOperator Scenario::density(std::string_view name) const {
  const auto& op = lookup(*this, name);
  if (op.kind == OperatorKind::state) return DensityOperator::pure(StateVector(Vector(op.value.col(0))));
  return DensityOperator(op.value);
}

FactoredSchedule Scenario::factored_schedule() const {
  FactoredSchedule out;
  for (const auto& interval : schedule) {
    ScheduleInterval si;
    for (const auto& op : interval) si.ops.push_back(TaggedOp{op.on, unitary(op.op)});
    out.push_back(std::move(si));
  }
  return out;
}

std::vector<HistorySlot> Scenario::history_slots() const {
  std::vector<HistorySlot> out;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (!slots[j].basis.empty()) {
      out.push_back(HistorySlot::from_basis(j, unitary(slots[j].basis)));
    } else {
      std::vector<Projector> ps;
      for (const auto& p : slots[j].projectors) ps.push_back(projector(p));
      out.emplace_back(j, std::move(ps));
    }
  }
  return out;
}

std::vector<UnitaryOperator> Scenario::preferred_basis_ops() const {
  if (!layout) throw InvalidArgument("scenario has no layout");
  std::vector<UnitaryOperator> out;
  if (preferred_bases.empty()) {
    for (auto d : layout->dims()) out.push_back(UnitaryOperator::identity(d));
  } else {
    for (const auto& b : preferred_bases) out.push_back(unitary(b));
  }
  return out;
}

bool operator==(const Scenario& lhs, const Scenario& rhs) {
  if (lhs.version != rhs.version || lhs.layout != rhs.layout || lhs.boundaries != rhs.boundaries ||
      lhs.preferred_bases != rhs.preferred_bases || lhs.operators.size() != rhs.operators.size() ||
      lhs.schedule.size() != rhs.schedule.size() || lhs.slots.size() != rhs.slots.size()) {
    return false;
  }
  for (std::size_t i = 0; i < lhs.operators.size(); ++i) {
    const auto& a = lhs.operators[i];
    const auto& b = rhs.operators[i];
    if (a.name != b.name || a.kind != b.kind || !same_matrix(a.value, b.value)) return false;
  }
  for (std::size_t j = 0; j < lhs.schedule.size(); ++j) {
    const auto& a = lhs.schedule[j];
    const auto& b = rhs.schedule[j];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].op != b[k].op || a[k].on != b[k].on) return false;
    }
  }
  for (std::size_t j = 0; j < lhs.slots.size(); ++j) {
    if (lhs.slots[j].projectors != rhs.slots[j].projectors || lhs.slots[j].basis != rhs.slots[j].basis) {
      return false;
    }
  }
  const auto& p = lhs.parameters;
  const auto& q = rhs.parameters;
  return p.theta == q.theta && p.phi == q.phi && p.mu == q.mu && p.runs == q.runs && p.seed == q.seed &&
         p.dims == q.dims && p.time == q.time && p.cap == q.cap;
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    const auto& m = e.mark;
    if (m.is_null()) throw ScenarioError(source, 0, 0, e.msg);
    throw ScenarioError(source, static_cast<std::size_t>(m.line) + 1, static_cast<std::size_t>(m.column) + 1, e.msg);
  }
  return Reader(source).read(root);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string(), 0, 0, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const Scenario& sc) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "version" << YAML::Value << sc.version;

  if (sc.layout) {
    out << YAML::Key << "layout" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto d : sc.layout->dims()) out << d;
    out << YAML::EndSeq;
  }

  if (!sc.operators.empty()) {
    out << YAML::Key << "operators" << YAML::Value << YAML::BeginMap;
    for (const auto& op : sc.operators) {
      out << YAML::Key << op.name << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "kind" << YAML::Value << std::string(to_string(op.kind));
      if (op.kind == OperatorKind::state) {
        out << YAML::Key << "vector" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (Eigen::Index i = 0; i < op.value.rows(); ++i) emit_entry(out, op.value(i, 0));
        out << YAML::EndSeq;
      } else {
        out << YAML::Key << "matrix" << YAML::Value << YAML::BeginSeq;
        for (Eigen::Index r = 0; r < op.value.rows(); ++r) {
          out << YAML::Flow << YAML::BeginSeq;
          for (Eigen::Index c = 0; c < op.value.cols(); ++c) emit_entry(out, op.value(r, c));
          out << YAML::EndSeq;
        }
        out << YAML::EndSeq;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }

  if (!sc.schedule.empty()) {
    out << YAML::Key << "schedule" << YAML::Value << YAML::BeginSeq;
    for (const auto& interval : sc.schedule) {
      out << YAML::BeginSeq;
      for (const auto& op : interval) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "op" << YAML::Value << op.op;
        out << YAML::Key << "on" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (auto s : op.on) out << s;
        out << YAML::EndSeq << YAML::EndMap;
      }
      out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }

  if (!sc.boundaries.empty()) {
    out << YAML::Key << "boundaries" << YAML::Value << YAML::BeginMap;
    for (const auto& [role, name] : sc.boundaries) out << YAML::Key << role << YAML::Value << name;
    out << YAML::EndMap;
  }

  if (!sc.slots.empty()) {
    out << YAML::Key << "slots" << YAML::Value << YAML::BeginSeq;
    for (const auto& slot : sc.slots) {
      if (!slot.basis.empty()) {
        out << slot.basis;
      } else {
        out << YAML::Flow << YAML::BeginSeq;
        for (const auto& p : slot.projectors) out << p;
        out << YAML::EndSeq;
      }
    }
    out << YAML::EndSeq;
  }

  if (!sc.preferred_bases.empty()) {
    out << YAML::Key << "preferred_bases" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& b : sc.preferred_bases) out << b;
    out << YAML::EndSeq;
  }

  const auto& p = sc.parameters;
  if (p.theta || p.phi || p.mu || p.runs || p.seed || p.dims || p.time || p.cap) {
    out << YAML::Key << "parameters" << YAML::Value << YAML::BeginMap;
    if (p.theta) out << YAML::Key << "theta" << YAML::Value << *p.theta;
    if (p.phi) out << YAML::Key << "phi" << YAML::Value << *p.phi;
    if (p.mu) {
      out << YAML::Key << "mu" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (const auto& z : *p.mu) emit_entry(out, z);
      out << YAML::EndSeq;
    }
    if (p.runs) out << YAML::Key << "runs" << YAML::Value << *p.runs;
    if (p.seed) out << YAML::Key << "seed" << YAML::Value << *p.seed;
    if (p.dims) {
      out << YAML::Key << "dims" << YAML::Value << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "system" << YAML::Value << p.dims->system;
      out << YAML::Key << "m" << YAML::Value << p.dims->m;
      out << YAML::Key << "n" << YAML::Value << p.dims->n;
      out << YAML::EndMap;
    }
    if (p.time) out << YAML::Key << "time" << YAML::Value << *p.time;
    if (p.cap) out << YAML::Key << "cap" << YAML::Value << *p.cap;
    out << YAML::EndMap;
  }

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace twobc::cli
