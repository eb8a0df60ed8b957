#include "lda/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lda {

using json = nlohmann::ordered_json;

namespace {

json matrix_to_json(const Matrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(std::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json labeled_to_json(const std::vector<LabeledMatrix> &gens) {
  json out = json::array();
  for (const auto &g : gens) out.push_back(json{{"label", g.label}, {"matrix", matrix_to_json(g.matrix)}});
  return out;
}

json counter_to_json(const OpCounter &c) {
  return json{{"mul", c.mul_count}, {"add", c.add_count}, {"inv", c.inv_count}};
}

json transcript_to_json(const Transcript &t) {
  const PublicParams &p = t.params;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["protocol_id"] = p.protocol_id;
  doc["n"] = p.n;
  doc["rep_kind"] = to_string(p.rep);
  doc["p"] = std::to_string(p.p);
  doc["q"] = std::to_string(p.q);
  doc["t"] = std::to_string(p.t);
  doc["split"] = p.split;
  doc["dim"] = p.dim;
  doc["h"] = matrix_to_json(t.h);
  doc["a_gens"] = labeled_to_json(t.a_gens);
  doc["b_gens"] = labeled_to_json(t.b_gens);
  doc["x"] = matrix_to_json(t.x);
  doc["y"] = matrix_to_json(t.y);
  doc["w"] = matrix_to_json(t.w);
  doc["z"] = matrix_to_json(t.z);
  doc["u"] = matrix_to_json(t.u);
  doc["v"] = matrix_to_json(t.v);
  return doc;
}

const json &field_of(const json &doc, const char *key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::uint64_t decimal(const json &value, const char *what) {
  if (!value.is_string()) throw ParseError(std::string(what) + " must be a decimal string");
  const auto &s = value.get_ref<const std::string &>();
  std::uint64_t out = 0;
  if (s.empty() || s.size() > 20) throw ParseError(std::string("bad decimal in ") + what);
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError(std::string("bad decimal in ") + what + ": '" + s + "'");
    const auto digit = static_cast<std::uint64_t>(c - '0');
    if (out > (UINT64_MAX - digit) / 10) throw ParseError(std::string("decimal overflow in ") + what);
    out = out * 10 + digit;
  }
  return out;
}

int integer(const json &doc, const char *key) {
  const json &v = field_of(doc, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Matrix matrix_from_json(const json &rows, const Field &f, std::size_t dim, const char *what) {
  if (!rows.is_array() || rows.size() != dim) {
    throw ParseError(std::string(what) + " must have " + std::to_string(dim) + " rows");
  }
  Matrix m(f, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json &row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(std::string(what) + " row " + std::to_string(i) + " must have " + std::to_string(dim) +
                       " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const std::uint64_t v = decimal(row[j], what);
      if (v >= f.modulus()) throw ParseError(std::string(what) + " has an unreduced entry");
      m(i, j) = v;
    }
  }
  return m;
}

std::vector<LabeledMatrix> labeled_from_json(const json &arr, const Field &f, std::size_t dim, const char *what) {
  if (!arr.is_array() || arr.empty()) throw ParseError(std::string(what) + " must be a nonempty array");
  std::vector<LabeledMatrix> out;
  for (const auto &item : arr) {
    const json &label = field_of(item, "label");
    if (!label.is_number_integer()) throw ParseError(std::string(what) + " label must be an integer");
    out.push_back({label.get<int>(), matrix_from_json(field_of(item, "matrix"), f, dim, what)});
  }
  return out;
}

json parse_document(const std::string &text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string write_transcript(const Transcript &t) { return transcript_to_json(t).dump(1) + "\n"; }

std::string write_transcript(const HonestRun &run, bool include_private) {
  json doc = transcript_to_json(run.transcript);
  if (include_private) {
    json priv;
    priv["seed"] = std::to_string(run.secrets.seed);
    priv["h_word"] = run.secrets.h_word.to_string();
    json words;
    for (const auto &e : run.secrets.elements) words[e.name] = e.word.to_string();
    priv["words"] = std::move(words);
    priv["k"] = matrix_to_json(run.k_alice);
    doc["private"] = std::move(priv);
  }
  return doc.dump(1) + "\n";
}

Transcript read_transcript(const std::string &text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("transcript must be a JSON object");
  const int version = integer(doc, "schema_version");
  if (version != kSchemaVersion) throw ParseError("unsupported schema_version " + std::to_string(version));

  PublicParams p{};
  p.protocol_id = integer(doc, "protocol_id");
  if (p.protocol_id != 1 && p.protocol_id != 2) throw ParseError("protocol_id must be 1 or 2");
  p.n = integer(doc, "n");
  if (p.n < 4) throw ParseError("n must be at least 4");
  const json &rep = field_of(doc, "rep_kind");
  if (!rep.is_string()) throw ParseError("rep_kind must be a string");
  try {
    p.rep = parse_rep_kind(rep.get<std::string>());
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what());
  }
  p.p = decimal(field_of(doc, "p"), "p");
  p.q = decimal(field_of(doc, "q"), "q");
  p.t = decimal(field_of(doc, "t"), "t");
  p.split = integer(doc, "split");
  const int dim = integer(doc, "dim");
  if (dim <= 0) throw ParseError("dim must be positive");
  p.dim = static_cast<std::size_t>(dim);

  Field f = [&] {
    try {
      return Field::make(p.p);
    } catch (const ContextError &e) {
      throw ParseError(e.what());
    }
  }();
  const std::size_t expected_dim =
      p.rep == RepKind::lk ? static_cast<std::size_t>(p.n * (p.n - 1) / 2) : static_cast<std::size_t>(p.n);
  if (p.dim != expected_dim) throw ParseError("dim does not match rep_kind and n");

  return Transcript{p,
                    matrix_from_json(field_of(doc, "h"), f, p.dim, "h"),
                    labeled_from_json(field_of(doc, "a_gens"), f, p.dim, "a_gens"),
                    labeled_from_json(field_of(doc, "b_gens"), f, p.dim, "b_gens"),
                    matrix_from_json(field_of(doc, "x"), f, p.dim, "x"),
                    matrix_from_json(field_of(doc, "y"), f, p.dim, "y"),
                    matrix_from_json(field_of(doc, "w"), f, p.dim, "w"),
                    matrix_from_json(field_of(doc, "z"), f, p.dim, "z"),
                    matrix_from_json(field_of(doc, "u"), f, p.dim, "u"),
                    matrix_from_json(field_of(doc, "v"), f, p.dim, "v")};
}

Matrix read_fixture_key(const std::string &text) {
  const json doc = parse_document(text);
  const Transcript t = read_transcript(text);
  const json &priv = field_of(doc, "private");
  return matrix_from_json(field_of(priv, "k"), t.field(), t.params.dim, "private.k");
}

std::string write_report(const AttackReport &report, bool include_timing) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["protocol_id"] = report.protocol_id;
  doc["dim"] = report.recovered_k.dim();
  doc["recovered_k"] = matrix_to_json(report.recovered_k);
  json stages = json::array();
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    const StageReport &s = report.stages[i];
    stages.push_back(json{{"stage", i + 1},
                          {"subspace", s.subspace},
                          {"expressed", s.expressed},
                          {"replacement", s.replacement},
                          {"basis_dim", s.basis_dim},
                          {"monoid_generators", s.monoid_generators},
                          {"build_ops", counter_to_json(s.build_ops)},
                          {"ops", counter_to_json(s.ops)}});
  }
  doc["stages"] = std::move(stages);
  doc["op_counts"] = counter_to_json(report.op_counts);
  if (std::any_of(report.bases.begin(), report.bases.end(), [](const auto &b) { return b.has_value(); })) {
    json bases = json::array();
    for (std::size_t i = 0; i < report.bases.size(); ++i) {
      if (!report.bases[i]) continue;
      json entries = json::array();
      for (const auto &e : report.bases[i]->entries()) {
        entries.push_back(
            json{{"left_word", e.left_word}, {"right_word", e.right_word}, {"value", matrix_to_json(e.value)}});
      }
      bases.push_back(json{{"stage", i + 1}, {"subspace", report.stages[i].subspace}, {"entries", std::move(entries)}});
    }
    doc["bases"] = std::move(bases);
  }
  if (include_timing) {
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(report.wall_time).count();
  }
  return doc.dump(1) + "\n";
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace lda
