#pragma once

namespace rxnlab::testing {

// Query and molecule sets small enough for the all-injections oracle.
inline constexpr const char* kPatterns[] = {
    "C",         "c",         "[#6]",      "[#7,#8]",    "*~*",        "C=O",        "[#6]=[#8]",
    "cc",        "c:c",       "[R]",       "[R2]",       "[!#6;!#1]",  "[CH3]",      "[D3]",
    "C-O",       "[#8]-[#6]=[#8]", "N-C=O", "[!C;R]",    "*@*",        "*!@*",       "a-a",
    "c1ccccc1",  "C1CC1",     "[#6]~[#7]~[#6]", "*(~*)(~*)~*", "[+]", "[-]", "[N+]=O", "[#8H1]",
    "[A]-[a]",   "C.O",       "[#6]-[#6]-[#6]-[#6]", "n", "[s,o]"};

inline constexpr const char* kMolecules[] = {
    "CCO",          "CC(=O)O",       "c1ccccc1O",   "CC(=O)Nc1ccccc1", "C1CC1C(=O)N",
    "O=C1CCCC1",    "c1ccncc1",      "C[N+](=O)[O-]", "CC(C)(C)O",     "c1ccc2ccccc2c1",
    "OC1CCNCC1",    "C1CC2CC1C2",    "c1ccsc1C",    "NC(=O)C(N)=O",    "C=CC=C",
    "COC(=O)C#N",   "[Na+].[O-]C=O", "C1=CC=CC=C1", "c1cc[nH]c1",      "CC1=CC(=O)C=CC1=O"};

}  // namespace rxnlab::testing
