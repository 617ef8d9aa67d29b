#ifndef MORLGP_ONTOLOGY_HPP
#define MORLGP_ONTOLOGY_HPP

#include <map>
#include <string>
#include <vector>

#include "morlgp/rng.hpp"

namespace morlgp {

struct Slot {
    std::string name;
    std::vector<std::string> values;
};

/// One database record: a value for every constraint slot and requestable.
struct Entity {
    std::map<std::string, std::string> constraints;
    std::map<std::string, std::string> requestables;
};

struct DomainStats {
    int n_constraints = 0;
    int n_requests = 0;
    int n_entities = 0;
    bool operator==(const DomainStats&) const = default;
};

/// Slot-filling domain schema: constraint slots with value lists,
/// requestable items, and the entity database.
struct DomainOntology {
    std::string name;
    std::vector<Slot> slots;
    std::vector<std::string> requestables;
    std::vector<Entity> entities;

    DomainStats stats() const;
    int slot_index(const std::string& slot) const; // -1 if unknown
    int value_index(int slot, const std::string& value) const;
    void validate() const;
};

DomainOntology load_ontology(const std::string& path);
DomainOntology parse_ontology(const std::string& json_text);
std::string ontology_to_json(const DomainOntology& o);
void save_ontology(const DomainOntology& o, const std::string& path);

/// Statistics-matched synthetic domain with uniformly sampled entity values.
DomainOntology generate_ontology(const std::string& name, int n_constraints,
                                 int n_values_per_slot, int n_requests,
                                 int n_entities, Rng& rng);

/// All entities matching every constraint, in database order.
/// Keys are slot names, values are slot values.
std::vector<int> db_lookup(const DomainOntology& o,
                           const std::map<std::string, std::string>& constraints);

} // namespace morlgp

#endif
