namespace sglab {}
