from polyan.cli import main

main()
