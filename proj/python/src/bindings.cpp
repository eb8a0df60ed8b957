#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lda/attack.hpp"
#include "lda/io.hpp"
#include "lda/lab.hpp"
#include "lda/protocol.hpp"

namespace py = pybind11;

namespace {

lda::ProtocolParams make_params(int protocol, int n, const std::string &rep, std::uint64_t seed,
                                std::optional<int> split, int len_min, int len_max) {
  lda::ProtocolParams p;
  p.protocol_id = protocol;
  p.n = n;
  p.rep = lda::parse_rep_kind(rep);
  p.seed = seed;
  p.split = split;
  p.len_min = len_min;
  p.len_max = len_max;
  p.validate();
  return p;
}

std::vector<std::vector<std::uint64_t>> rows_of(const lda::Matrix &m) {
  std::vector<std::vector<std::uint64_t>> out;
  const auto d = static_cast<std::ptrdiff_t>(m.dim());
  for (std::ptrdiff_t i = 0; i < d; ++i) out.emplace_back(m.raw().begin() + i * d, m.raw().begin() + (i + 1) * d);
  return out;
}

}  // namespace

PYBIND11_MODULE(_lda, m) {
  m.doc() = "Linear decomposition attack on double-shielded braid key exchange";

  py::register_exception<lda::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<lda::MalformedTranscriptError>(m, "MalformedTranscriptError", PyExc_RuntimeError);
  py::register_exception<lda::RepresentationError>(m, "RepresentationError", PyExc_ValueError);

  m.def(
      "simulate",
      [](int protocol, int n, const std::string &rep, std::uint64_t seed, std::optional<int> split, int len_min,
         int len_max, bool include_private) {
        const auto run = lda::run_protocol(make_params(protocol, n, rep, seed, split, len_min, len_max));
        return lda::write_transcript(run, include_private);
      },
      py::arg("protocol") = 1, py::arg("n") = 6, py::arg("rep") = "lk", py::arg("seed") = 0,
      py::arg("split") = py::none(), py::arg("len_min") = 5, py::arg("len_max") = 15,
      py::arg("include_private") = false, "Run an honest exchange and return its transcript as JSON.");

  m.def(
      "attack",
      [](const std::string &transcript, bool dump_bases) {
        const lda::Transcript t = lda::read_transcript(transcript);
        py::gil_scoped_release release;
        return lda::write_report(lda::attack(t, {dump_bases}), false);
      },
      py::arg("transcript"), py::arg("dump_bases") = false,
      "Recover the shared key from a transcript JSON string; returns the report as JSON.");

  m.def(
      "fixture_key",
      [](const std::string &fixture) { return rows_of(lda::read_fixture_key(fixture)); }, py::arg("fixture"),
      "Agreed key stored in a private fixture document.");

  m.def(
      "demo",
      [](int protocol, int n, const std::string &rep, std::uint64_t seed, int trials) {
        const auto params = make_params(protocol, n, rep, seed, std::nullopt, 5, 15);
        lda::DemoSummary summary;
        {
          py::gil_scoped_release release;
          summary = lda::run_demo(params, trials);
        }
        py::list out;
        for (const auto &t : summary.trials) {
          py::dict d;
          d["index"] = t.index;
          d["seed"] = t.seed;
          d["match"] = t.match;
          d["dims"] = py::make_tuple(t.dims[0], t.dims[1], t.dims[2]);
          d["mul_count"] = t.ops.mul_count;
          out.append(d);
        }
        return out;
      },
      py::arg("protocol") = 1, py::arg("n") = 6, py::arg("rep") = "lk", py::arg("seed") = 0, py::arg("trials") = 5);

  m.def("selftest", [] {
    py::list out;
    for (const auto &r : lda::run_selftest()) out.append(py::make_tuple(r.name, r.passed, r.detail));
    return out;
  });

  m.def(
      "representation",
      [](const std::string &rep, int n, std::uint64_t q, std::uint64_t t, std::uint64_t p) {
        const lda::Field f = lda::Field::make(p);
        const auto r = lda::parse_rep_kind(rep) == lda::RepKind::lk
                           ? lda::lk_representation(n, lda::FieldElement(f, q), lda::FieldElement(f, t))
                           : lda::burau_representation(n, lda::FieldElement(f, t));
        py::list gens;
        for (int i = 1; i < n; ++i) gens.append(rows_of(r.image(i)));
        return gens;
      },
      py::arg("rep"), py::arg("n"), py::arg("q") = 2, py::arg("t") = 3, py::arg("p") = lda::Field::kDefaultModulus,
      "Generator images sigma_1..sigma_{n-1} as nested lists, after the braid-relation check.");

  m.attr("DEFAULT_MODULUS") = lda::Field::kDefaultModulus;
}
