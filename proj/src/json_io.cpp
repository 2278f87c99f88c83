#include "tpflow/json_io.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace tpflow {

namespace {

template <typename T>
Matrix<T> matrix_from_data(const Json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (!data.is_array() || static_cast<int>(data.size()) != rows)
    throw std::invalid_argument("matrix field \"data\" must have \"rows\" rows");
  Matrix<T> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = data.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("matrix row " + std::to_string(i) + " must have \"cols\" entries");
    for (int c = 0; c < cols; ++c) {
      const auto& cell = row.at(c);
      if (cell.is_string()) {
        m(i, c) = scalar_traits<T>::from_string(cell.template get<std::string>());
      } else if (cell.is_number()) {
        if constexpr (scalar_traits<T>::is_exact) {
          if (!cell.is_number_integer())
            throw std::invalid_argument("rational matrices take integers or \"p/q\" strings");
          m(i, c) = scalar_traits<T>::from_long(cell.template get<long>());
        } else {
          m(i, c) = cell.template get<double>();
        }
      } else {
        throw std::invalid_argument("matrix entries must be numbers or strings");
      }
    }
  }
  return m;
}

}  // namespace

MatrixValue matrix_from_json(const Json& j) {
  const std::string scalar = j.value("scalar", "float");
  MatrixValue out;
  if (scalar == "rational") {
    out.value = matrix_from_data<Rat>(j);
  } else if (scalar == "float") {
    out.value = matrix_from_data<double>(j);
  } else {
    throw std::invalid_argument("unknown scalar backend \"" + scalar + "\"");
  }
  return out;
}

Json matrix_to_json(const Matrix<Rat>& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_to_string(m(i, c)));
    data.push_back(row);
  }
  j["data"] = data;
  j["scalar"] = "rational";
  return j;
}

Json matrix_to_json(const Matrix<double>& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    data.push_back(row);
  }
  j["data"] = data;
  j["scalar"] = "float";
  return j;
}

namespace {

template <typename T>
PluckerVector<T> plucker_from_data(const Json& j, int k, int n) {
  PluckerVector<T> p;
  p.k = k;
  p.n = n;
  p.coords.assign(static_cast<size_t>(binomial(n, k)), T(0));
  p.normalization = Normalization::Raw;
  for (const auto& [key, val] : j.at("coords").items()) {
    const Subset s = subset_from_key(n, key);
    if (static_cast<int>(s.size()) != k)
      throw std::invalid_argument("bad subset key \"" + key + "\": expected " + std::to_string(k) + " labels");
    T v;
    if (val.is_string()) {
      v = scalar_traits<T>::from_string(val.template get<std::string>());
    } else if (val.is_number()) {
      if constexpr (scalar_traits<T>::is_exact) {
        if (!val.is_number_integer())
          throw std::invalid_argument("rational coords take integers or \"p/q\" strings");
        v = scalar_traits<T>::from_long(val.template get<long>());
      } else {
        v = val.template get<double>();
      }
    } else {
      throw std::invalid_argument("coordinate values must be numbers or strings");
    }
    p.at(s) = v;
  }
  return p;
}

}  // namespace

PluckerValue plucker_from_json(const Json& j) {
  const int k = j.at("k").get<int>();
  const int n = j.at("n").get<int>();
  const std::string scalar = j.value("scalar", "float");
  PluckerValue out;
  if (scalar == "rational") {
    out.value = plucker_from_data<Rat>(j, k, n);
  } else if (scalar == "float") {
    out.value = plucker_from_data<double>(j, k, n);
  } else {
    throw std::invalid_argument("unknown scalar backend \"" + scalar + "\"");
  }
  return out;
}

namespace {

template <typename T>
Json plucker_json_impl(const PluckerVector<T>& p, const char* tag) {
  Json j;
  j["k"] = p.k;
  j["n"] = p.n;
  j["scalar"] = tag;
  Json coords = Json::object();
  const auto subs = k_subsets(p.n, p.k);
  for (size_t i = 0; i < subs.size(); ++i) {
    if constexpr (scalar_traits<T>::is_exact) {
      coords[subset_key(subs[i])] = rat_to_string(p.coords[i]);
    } else {
      coords[subset_key(subs[i])] = p.coords[i];
    }
  }
  j["coords"] = coords;
  return j;
}

}  // namespace

Json plucker_to_json(const PluckerVector<Rat>& p) { return plucker_json_impl(p, "rational"); }
Json plucker_to_json(const PluckerVector<double>& p) { return plucker_json_impl(p, "float"); }

ResistorNetwork network_from_json(const Json& j) {
  ResistorNetwork net;
  for (const auto& b : j.at("boundary")) net.boundary.push_back(b.get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("edges must be [u, v, conductance] triples");
    Rat c;
    if (e.at(2).is_string()) {
      c = rat_from_string(e.at(2).get<std::string>());
    } else if (e.at(2).is_number_integer()) {
      c = Rat(e.at(2).get<long>());
    } else {
      throw std::invalid_argument("conductances are rational strings or integers");
    }
    net.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), c);
  }
  return net;
}

Json network_to_json(const ResistorNetwork& net) {
  Json j;
  j["boundary"] = net.boundary;
  Json edges = Json::array();
  for (const auto& [u, v, c] : net.edges) edges.push_back(Json::array({u, v, rat_to_string(c)}));
  j["edges"] = edges;
  return j;
}

Json read_json_input(const std::string& path) {
  if (path == "-") {
    Json j;
    std::cin >> j;
    return j;
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace tpflow
