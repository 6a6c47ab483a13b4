# file necessary for recursive search for unittest discovery
