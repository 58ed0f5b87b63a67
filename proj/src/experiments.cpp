// stub, replaced as the module lands
