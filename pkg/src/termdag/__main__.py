from termdag.cli import main

main()
