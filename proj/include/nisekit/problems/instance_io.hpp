#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nisekit/core/errors.hpp"
#include "nisekit/problems/knapsack.hpp"
#include "nisekit/problems/logistic.hpp"

namespace nisekit {

using json = nlohmann::ordered_json;

inline json knapsack_to_json(const KnapsackInstance& inst) {
  json j;
  j["type"] = "knapsack";
  j["m"] = inst.m;
  j["q"] = inst.q;
  j["sizes"] = inst.sizes;
  j["values"] = inst.values;
  j["capacity"] = inst.capacity;
  j["seed"] = inst.seed;
  return j;
}

inline KnapsackInstance knapsack_from_json(const json& j) {
  if (j.value("type", "") != std::string("knapsack")) {
    throw DataCorruption("knapsack_from_json: type field is not 'knapsack'");
  }
  for (const char* field : {"m", "q", "sizes", "values", "capacity", "seed"}) {
    if (!j.contains(field)) {
      throw DataCorruption(std::string("knapsack_from_json: missing field ") + field);
    }
  }
  if (!j["capacity"].is_number_integer()) {
    throw ContractViolation("knapsack_from_json: capacity must be an integer");
  }
  for (const auto& t : j["sizes"]) {
    if (!t.is_number_integer()) {
      throw ContractViolation("knapsack_from_json: sizes must be integers");
    }
  }
  for (const auto& row : j["values"]) {
    for (const auto& v : row) {
      if (!v.is_number_integer()) {
        throw ContractViolation("knapsack_from_json: values must be integers");
      }
    }
  }
  KnapsackInstance inst;
  inst.m = j["m"].get<std::size_t>();
  inst.q = j["q"].get<std::size_t>();
  inst.sizes = j["sizes"].get<std::vector<long long>>();
  inst.values = j["values"].get<std::vector<std::vector<long long>>>();
  inst.capacity = j["capacity"].get<long long>();
  inst.seed = j["seed"].get<std::uint64_t>();
  inst.validate();
  return inst;
}

inline json multilabel_to_json(const MultilabelInstance& inst) {
  json j;
  j["type"] = "multilabel";
  j["n"] = inst.n;
  j["d"] = inst.d;
  j["L"] = inst.L;
  j["X"] = inst.X;
  j["Y"] = inst.Y;
  j["seed"] = inst.seed;
  return j;
}

inline MultilabelInstance multilabel_from_json(const json& j) {
  if (j.value("type", "") != std::string("multilabel")) {
    throw DataCorruption("multilabel_from_json: type field is not 'multilabel'");
  }
  for (const char* field : {"n", "d", "L", "X", "Y", "seed"}) {
    if (!j.contains(field)) {
      throw DataCorruption(std::string("multilabel_from_json: missing field ") + field);
    }
  }
  MultilabelInstance inst;
  inst.n = j["n"].get<std::size_t>();
  inst.d = j["d"].get<std::size_t>();
  inst.L = j["L"].get<std::size_t>();
  inst.X = j["X"].get<std::vector<std::vector<double>>>();
  inst.Y = j["Y"].get<std::vector<std::vector<int>>>();
  inst.seed = j["seed"].get<std::uint64_t>();
  inst.validate();
  return inst;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataCorruption("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataCorruption("cannot parse " + path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DataCorruption("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw DataCorruption("failed writing " + path);
}

}  // namespace nisekit
