#pragma once

#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "bratteli/diagram.hpp"
#include "bratteli/language.hpp"
#include "bratteli/measure.hpp"
#include "bratteli/odometer.hpp"
#include "bratteli/ordering.hpp"
#include "bratteli/perfection.hpp"
#include "bratteli/skeleton.hpp"

namespace bratteli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDiagramSchema = "bratteli/1";

// Throws ParseError with the path in the detail.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j, int indent = 2);

// Big integers are written as numbers when they fit in 64 bits, strings otherwise;
// both forms are accepted on input.
Json big_to_json(const BigInt& x);
BigInt big_from_json(const Json& j);
Json rational_to_json(const Rational& r);  // "p/q"

RawDiagram raw_diagram_from_json(const Json& j);
Diagram diagram_from_json(const Json& j);  // parses and validates
Json diagram_to_json(const Diagram& d);
Diagram load_diagram(const std::string& path);

// Words are strings of letters when every label is one character, else arrays of labels.
// {"substitution": {...}} is read as a stationary ordering.
Ordering ordering_from_json(const Diagram& d, const Json& j);
Json ordering_to_json(const Diagram& d, const Ordering& w);
Ordering load_ordering(const Diagram& d, const std::string& path);

Word word_from_json(const Diagram& d, int letter_level, const Json& j);
Json word_to_json(const Diagram& d, int letter_level, const Word& w);

std::pair<Skeleton, Sigma> skeleton_from_json(const Diagram& d, const Json& j);
Json skeleton_to_json(const Diagram& d, const Skeleton& sk, const Sigma& sigma);

Json to_json(const Diagram& d, const ClassificationReport& r);
Json to_json(const Diagram& d, const ExtremalReport& r);
Json to_json(const Diagram& d, const PerfectionVerdict& v);
Json to_json(const Diagram& d, const LanguageSample& s);
Json to_json(const Diagram& d, const ExactLanguage& s);
Json to_json(const Diagram& d, const AssociatedGraph& g);
Json to_json(const Diagram& d, const BalanceReport& b);
Json to_json(const Diagram& d, const EnumerationReport& r);
Json to_json(const Diagram& d, const PeriodicLanguage& p);
Json to_json(const TowerCounts& t);
Json to_json(const Frequency& f);
Json to_json(const GenericJReport& r);
Json to_json(const DivergenceReport& r);
Json to_json(const GenericOneReport& r);
Json to_json(const ImperfectionReport& r);

// Labels of the associated-graph nodes, "[min,max]".
std::vector<std::string> node_labels(const Diagram& d, const AssociatedGraph& g);

}  // namespace bratteli
