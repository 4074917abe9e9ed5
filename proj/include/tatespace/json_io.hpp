#pragma once

#include "tatespace/bidirected.hpp"
#include "tatespace/errors.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/spaces.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

namespace tatespace {

using Json = nlohmann::ordered_json;

/// Malformed document; `path` is a JSON pointer to the offending value.
class InputError : public Error {
public:
    InputError(std::string path, const std::string& msg) : Error(msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Parses text, throwing InputError (path "") on syntax errors.
Json parse_json_text(const std::string& text);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FieldSpec& f, const std::string& path = "");

Json to_json(const TailDescriptor& t);
TailDescriptor tail_from_json(const Json& j, const std::string& path = "");

/// Every object kind the CLI reads and writes.
using AnyObject = std::variant<FinVect, LinMap, Tower, IndTower, TateObj, IndLCObj, ProDiscObj>;

/// Lazy objects are written to their available length; unlimited ones to
/// `depth` levels (or to the stable level of a stabilizing tail, if deeper)
/// and infinite sequences to `depth` pieces.
Json to_json(const AnyObject& obj, std::size_t depth);
/// The document's "field" wins over `fallback`. Builtins are resolved by name.
AnyObject object_from_json(const Json& j, const FieldSpec& fallback, const std::string& path = "");
std::string kind_name(const AnyObject& obj);

/// A grid file: the grid plus whatever witnesses and pairings it carries.
/// Cell indices in files are 1-based.
struct GridDocument {
    BidirectedGrid grid;
    std::optional<SESWitness> ses;
    std::optional<PairingFamily> product;
    std::optional<PairingFamily> coproduct;
    std::optional<PDWitness> pd;
    /// coproduct family on the dual grid used by the duality check
    std::optional<PairingFamily> dual_coproduct;

    friend bool operator==(const GridDocument&, const GridDocument&) = default;
};

bool is_grid_document(const Json& j);
Json to_json(const GridDocument& doc);
GridDocument grid_from_json(const Json& j, const FieldSpec& fallback);

Json to_json(const GridReport& rep);
Json to_json(const GridTruth& truth);
GridTruth truth_from_json(const Json& j, const FieldSpec& f);
Json to_json(const RFHDecomposition& d, std::size_t m, std::size_t n);
Json to_json(const KappaCertificate& k);

}  // namespace tatespace
