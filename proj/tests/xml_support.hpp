#pragma once

#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace scriptgrove::testing {

// Throws boost::property_tree::xml_parser_error when the document is not
// well-formed XML.
inline boost::property_tree::ptree parse_xml(const std::string& xml)
{
    std::istringstream in(xml);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree);
    return tree;
}

inline bool is_well_formed(const std::string& xml)
{
    try {
        parse_xml(xml);
        return true;
    } catch (const boost::property_tree::xml_parser_error&) {
        return false;
    }
}

// Elements below `node`, not counting attribute holders.
inline std::size_t count_elements(const boost::property_tree::ptree& node)
{
    std::size_t n = 0;
    for (const auto& [name, child] : node) {
        if (name == "<xmlattr>" || name == "<xmlcomment>")
            continue;
        n += 1 + count_elements(child);
    }
    return n;
}

inline std::size_t count_elements(const std::string& xml)
{
    return count_elements(parse_xml(xml));
}

} // namespace scriptgrove::testing
